#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "dataio.hpp"
#include "parallel.hpp"

namespace nmkdv {

struct LazyJumpLog {
  std::mutex mutex;
  std::shared_ptr<const JumpLog> ptr;
};

std::shared_ptr<const JumpLog> SpectralData::jump_log(double s_min, double s_max,
                                                      int n_per_side) const {
  require(bool(jump_log_slot), Errc::invalid_argument, "spectral data missing its jump-log slot");
  std::lock_guard<std::mutex> lock(jump_log_slot->mutex);
  if (!jump_log_slot->ptr) {
    jump_log_slot->ptr = make_jump_log(*functions, s_min, s_max, n_per_side);
  }
  return jump_log_slot->ptr;
}

namespace {

std::vector<double> symmetric_grid(double k_min, double k_max, int n) {
  require(n >= 8 && n % 2 == 0, Errc::invalid_argument, "grid size must be even and >= 8");
  int half = n / 2;
  std::vector<double> ks(n);
  double ratio = std::log(k_max / k_min) / double(half - 1);
  for (int i = 0; i < half; ++i) {
    double k = k_min * std::exp(ratio * i);
    ks[size_t(half + i)] = k;
    ks[size_t(half - 1 - i)] = -k;
  }
  return ks;
}

// Quadratic extrapolation to k = 0 from the three smallest positive nodes.
Complex extrapolate_to_zero(const std::vector<double>& ks, const std::vector<Complex>& vals) {
  double k1 = ks[0], k2 = ks[1], k3 = ks[2];
  Complex f1 = vals[0], f2 = vals[1], f3 = vals[2];
  // Lagrange at 0
  double d1 = (k1 - k2) * (k1 - k3), d2 = (k2 - k1) * (k2 - k3), d3 = (k3 - k1) * (k3 - k2);
  return f1 * (k2 * k3 / d1) + f2 * (k1 * k3 / d2) + f3 * (k1 * k2 / d3);
}

struct SmallKData {
  Complex a2_at_0, k_a1_at_0, a2_over_k_at_0;
};

SmallKData small_k_limits(const SpectralData& d) {
  size_t half = d.k_grid.size() / 2;  // grid ascends, positives start here
  std::vector<double> ks;
  std::vector<Complex> a2v, ka1v, a2k;
  for (size_t j = 0; j < 3; ++j) {
    size_t idx = half + j;
    double k = d.k_grid[idx];
    ks.push_back(k);
    a2v.push_back(d.samples[idx].a2);
    ka1v.push_back(k * d.samples[idx].a1);
    a2k.push_back(d.samples[idx].a2 / k);
  }
  return {extrapolate_to_zero(ks, a2v), extrapolate_to_zero(ks, ka1v),
          extrapolate_to_zero(ks, a2k)};
}

}  // namespace

CaseTag classify_case(const std::vector<ScatteringSample>& samples, double eps_case) {
  std::vector<std::pair<double, Complex>> pos;
  double max_a2 = 0.0;
  for (const auto& s : samples) {
    if (s.k > 0.0) pos.push_back({s.k, s.a2});
    max_a2 = std::max(max_a2, std::abs(s.a2));
  }
  require(pos.size() >= 3, Errc::invalid_argument, "need a2 sampled at three positive k");
  std::sort(pos.begin(), pos.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::vector<double> ks = {pos[0].first, pos[1].first, pos[2].first};
  std::vector<Complex> vals = {pos[0].second, pos[1].second, pos[2].second};
  double a20 = std::abs(extrapolate_to_zero(ks, vals));
  double threshold = eps_case * max_a2;
  double ratio = a20 / threshold;
  require(ratio < 0.5 || ratio > 2.0, Errc::ambiguous_classification,
          "|a2(0)| within a factor 2 of the Case II threshold");
  return a20 < threshold ? CaseTag::II : CaseTag::I;
}

Complex continue_a1(const SpectralFunctions& f, Complex k) {
  require(k.imag() >= 0.0, Errc::invalid_argument, "a1 lives in the closed upper half-plane");
  require(std::abs(k) > 1e-12, Errc::singular_at_origin, "a1 singular at k = 0");
  return f.a1_upper(k);
}

namespace {

double a1_on_axis(const SpectralFunctions& f, double y) {
  Complex v = f.a1_upper(Complex(0.0, y));
  require(std::abs(v.imag()) <= 1e-7 * std::max(1.0, std::abs(v)), Errc::invalid_argument,
          "a1(iy) failed the reality check");
  return v.real();
}

// Winding number of a1 around a rectangle in the upper half-plane, with
// adaptive refinement of the argument increments.
int rectangle_winding(const SpectralFunctions& f, double w, double y_lo, double y_hi) {
  std::vector<Complex> corners = {{-w, y_lo}, {w, y_lo}, {w, y_hi}, {-w, y_hi}};
  double total = 0.0;
  for (int edge = 0; edge < 4; ++edge) {
    Complex z0 = corners[edge], z1 = corners[(edge + 1) % 4];
    int n = 100;  // 400 points around the whole rectangle, then refined
    std::vector<Complex> vals(size_t(n) + 1);
    for (int i = 0; i <= n; ++i) {
      Complex z = z0 + (z1 - z0) * (double(i) / n);
      vals[size_t(i)] = f.a1_upper(z);
    }
    for (int i = 0; i < n; ++i) {
      Complex za = z0 + (z1 - z0) * (double(i) / n);
      Complex zb = z0 + (z1 - z0) * (double(i + 1) / n);
      Complex fa = vals[size_t(i)], fb = vals[size_t(i + 1)];
      // refine until each increment is < pi/2
      struct Piece {
        Complex za, zb, fa, fb;
        int depth;
      };
      std::vector<Piece> stack = {{za, zb, fa, fb, 0}};
      while (!stack.empty()) {
        Piece p = stack.back();
        stack.pop_back();
        double inc = std::arg(p.fb / p.fa);
        if (std::abs(inc) < 1.5 || p.depth > 24) {
          total += inc;
          continue;
        }
        Complex zm = 0.5 * (p.za + p.zb);
        Complex fm = f.a1_upper(zm);
        stack.push_back({zm, p.zb, fm, p.fb, p.depth + 1});
        stack.push_back({p.za, zm, p.fa, fm, p.depth + 1});
      }
    }
  }
  return int(std::lround(total / (2.0 * kPi)));
}

}  // namespace

KappaRoot find_kappa_root(const SpectralFunctions& f, const GridOptions& opt) {
  double A = f.background();
  require(A > 0.0, Errc::invalid_argument, "kappa search needs a positive background");
  double y_lo = opt.k_min;
  double y_hi = std::min(opt.y_max_factor * A, 0.98 * f.max_im_k());
  require(y_hi > 4.0 * y_lo, Errc::invalid_argument, "kappa search window collapsed");

  const int n_scan = 200;
  double ratio = std::log(y_hi / y_lo) / double(n_scan - 1);
  std::vector<double> ys(n_scan), vals(n_scan);
  parallel_for(size_t(n_scan), [&](size_t i) {
    ys[i] = y_lo * std::exp(ratio * double(i));
    vals[i] = a1_on_axis(f, ys[i]);
  });

  int bracket = -1;
  for (int i = 0; i + 1 < n_scan; ++i) {
    if (vals[size_t(i)] == 0.0) continue;
    if (vals[size_t(i)] * vals[size_t(i + 1)] < 0.0) {
      require(bracket < 0, Errc::multiple_zeros, "more than one sign change of a1 on i R_+");
      bracket = i;
    }
  }
  require(bracket >= 0, Errc::no_sign_change, "a1(iy) has no sign change on the search interval");

  double lo = ys[size_t(bracket)], hi = ys[size_t(bracket + 1)];
  double flo = vals[size_t(bracket)];
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = a1_on_axis(f, mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if (fm * flo < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  double kappa = 0.5 * (lo + hi);

  auto derivative_y = [&](double y, double h) {
    return (a1_on_axis(f, y - 2.0 * h) - 8.0 * a1_on_axis(f, y - h) + 8.0 * a1_on_axis(f, y + h) -
            a1_on_axis(f, y + 2.0 * h)) /
           (12.0 * h);
  };
  double h = 1e-5 * std::max(1.0, kappa);
  for (int it = 0; it < 4; ++it) {
    double g = a1_on_axis(f, kappa);
    double dg = derivative_y(kappa, h);
    if (dg == 0.0) break;
    kappa -= g / dg;
  }
  require(std::abs(a1_on_axis(f, kappa)) <= 1e-10, Errc::not_converged,
          "kappa polish did not reach |a1| <= 1e-10");

  if (opt.verify_unique_zero) {
    double top = std::min(1.2 * y_hi, 0.99 * f.max_im_k());
    int count = rectangle_winding(f, y_hi, 2.0 * opt.k_min, top);
    require(count == 1, Errc::multiple_zeros,
            "argument principle counts " + std::to_string(count) + " zeros of a1");
  }

  // a1'(i kappa) = -i d/dy a1(iy)
  KappaRoot out;
  out.kappa = kappa;
  out.a1_prime = -kImag * derivative_y(kappa, h);
  return out;
}

namespace {

// Cubic through samples at +-h, +-2h; bridges the |s| < h window where the
// scattering evaluator refuses to go (k_min guard).
struct SmallSBridge {
  double h;
  Complex v_m2, v_m1, v_p1, v_p2;

  template <typename Fn>
  SmallSBridge(double h_, const Fn& fn)
      : h(h_), v_m2(fn(-2.0 * h_)), v_m1(fn(-h_)), v_p1(fn(h_)), v_p2(fn(2.0 * h_)) {}

  Complex eval(double s) const {
    double x[4] = {-2.0 * h, -h, h, 2.0 * h};
    Complex v[4] = {v_m2, v_m1, v_p1, v_p2};
    Complex sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      double w = 1.0;
      for (int j = 0; j < 4; ++j) {
        if (j != i) w *= (s - x[j]) / (x[i] - x[j]);
      }
      sum += w * v[i];
    }
    return sum;
  }
};

// Rejects integrands whose continuous arg would leave (-pi, pi), where the
// principal log used below silently jumps sheets.
void check_log_branch(const std::function<Complex(double)>& g) {
  for (int side = -1; side <= 1; side += 2) {
    const int n = 600;
    double running = 0.0;
    Complex prev = 1.0;
    for (int i = n; i >= 0; --i) {  // sweep inward from |s| = 50
      double s = double(side) * 1e-3 * std::pow(5e4, double(i) / n);
      Complex v = g(s);
      if (i == n) {
        running = std::arg(v);
      } else {
        running += std::arg(v / prev);
      }
      prev = v;
      require(std::abs(running) < kPi * 0.999, Errc::log_branch_jump,
              "arg(1 - b^2) winds past +-pi");
    }
  }
}

}  // namespace

namespace {

// Direct evaluation up to |s| = S, O(s^-2) model beyond; the Richardson fit
// removes the 1/s^3 correction.
struct TailCapped {
  std::function<Complex(double)> inner;
  double S;
  Complex c_plus, c_minus;

  TailCapped(std::function<Complex(double)> fn, double S_cut) : inner(std::move(fn)), S(S_cut) {
    auto fit = [&](double sgn) {
      return 2.0 * (S * S) * inner(sgn * S) - (0.25 * S * S) * inner(sgn * 0.5 * S);
    };
    c_plus = fit(1.0);
    c_minus = fit(-1.0);
  }

  Complex operator()(double s) const {
    if (std::abs(s) <= S) return inner(s);
    return (s > 0.0 ? c_plus : c_minus) / (s * s);
  }
};

}  // namespace

KappaFormula kappa_by_formula(const SpectralFunctions& f, CaseTag tag, const QuadOptions& quad) {
  double A = f.background();
  const double h0 = 2e-3;    // above the evaluator's k_min guard
  const double S_max = 600;  // analytic tail model beyond
  // The pole's segment is finite so the p.v. subtraction stays local, and the
  // rays see only the smooth tail model (safe to fold onto 1/u).
  Contour full_line = {ContourSegment::ray_minus(-S_max), ContourSegment::interval(-S_max, -8.0),
                       ContourSegment::interval(-8.0, 8.0), ContourSegment::interval(8.0, S_max),
                       ContourSegment::ray_plus(S_max)};
  KappaFormula out;
  if (tag == CaseTag::I) {
    // s * b(s) is regular through 0, unlike b itself
    SmallSBridge sb_small(h0, [&](double s) { return s * f.b(s); });
    auto sb = [&](double s) -> Complex {
      return std::abs(s) < h0 ? sb_small.eval(s) : s * f.b(s);
    };
    auto one_minus_b2_scaled = [&](double s) -> Complex {
      Complex v = sb(s);
      return s * s - v * v;  // s^2 (1 - b^2)
    };
    check_log_branch([&](double s) { return one_minus_b2_scaled(s) / (s * s); });
    TailCapped L([&](double s) { return std::log(one_minus_b2_scaled(s) / (1.0 + s * s)); },
                 S_max);
    Complex pv = principal_value_integral([&](double s) { return L(s); }, 0.0, full_line, quad);
    Complex kappa = 0.5 * A * std::exp(-pv / (2.0 * kPi * kImag));
    out.kappa = kappa.real();
    out.imag_residual = std::abs(kappa.imag());
  } else {
    SmallSBridge b_small(h0, [&](double s) { return f.b(s); });
    auto b = [&](double s) -> Complex { return std::abs(s) < h0 ? b_small.eval(s) : f.b(s); };
    auto one_minus_b2 = [&](double s) -> Complex {
      Complex bb = b(s);
      return 1.0 - bb * bb;
    };
    check_log_branch(one_minus_b2);
    TailCapped L([&](double s) { return std::log(one_minus_b2(s)); }, S_max);
    Complex I1 = std::exp(principal_value_integral([&](double s) { return L(s); }, 0.0,
                                                   full_line, quad) /
                          (2.0 * kPi * kImag));
    Complex b0 = b(0.0);
    Complex I2 = std::exp(0.5 * std::log(1.0 - b0 * b0));
    Complex kappa = A * (std::sqrt(b0 * b0 + I2 * I2) - b0) / (2.0 * I1 * I2);
    out.kappa = kappa.real();
    out.imag_residual = std::abs(kappa.imag());
  }
  require(out.imag_residual <= 1e-8 * std::max(1.0, std::abs(out.kappa)), Errc::not_converged,
          "kappa formula returned a non-real value");
  require(out.kappa > 0.0, Errc::not_converged, "kappa formula returned a non-positive value");
  return out;
}

int gamma0_factor(const SpectralFunctions& f, double kappa) {
  Complex ik(0.0, kappa);
  auto c1 = f.psi1_first_column(ik);
  auto c2 = f.psi2_second_column(ik);
  require(std::abs(c2[0]) > 1e-14 && std::abs(c2[1]) > 1e-14, Errc::proportionality_violated,
          "psi2 column vanishes at i kappa");
  Complex ratio0 = c1[0] / c2[0];
  Complex ratio1 = c1[1] / c2[1];
  require(std::abs(ratio0 - ratio1) <= 1e-4 * std::max(1.0, std::abs(ratio0)),
          Errc::proportionality_violated, "Jost columns not parallel at i kappa");
  double g = ratio0.real();
  require(std::abs(g * g - 1.0) <= 1e-4, Errc::proportionality_violated,
          "gamma0 snap residual exceeds 1e-4");
  return g > 0.0 ? +1 : -1;
}

SpectralData build_spectral_data(std::shared_ptr<const SpectralFunctions> f,
                                 const GridOptions& opt) {
  require(bool(f), Errc::invalid_argument, "null spectral functions");
  SpectralData d;
  d.functions = f;
  d.options = opt;
  d.A = f->background();
  d.sigma = f->sigma();
  d.k_grid = symmetric_grid(opt.k_min, opt.k_max, opt.n);

  d.samples.resize(d.k_grid.size());
  parallel_for(d.k_grid.size(), [&](size_t i) {
    double k = d.k_grid[i];
    ScatteringSample s;
    s.k = k;
    s.a1 = f->a1(k);
    s.a2 = f->a2(k);
    s.b = f->b(k);
    s.S = {s.a1, -double(d.sigma) * s.b, s.b, s.a2};
    d.samples[i] = s;
  });
  d.reflections.resize(d.samples.size());
  for (size_t i = 0; i < d.samples.size(); ++i) {
    d.reflections[i] = reflection_coefficients(d.samples[i]);
  }

  d.case_tag = classify_case(d.samples, opt.eps_case);
  auto root = find_kappa_root(*f, opt);
  d.kappa = root.kappa;
  d.a1_prime = root.a1_prime;
  d.gamma0 = gamma0_factor(*f, d.kappa);

  SmallKData lim = small_k_limits(d);
  if (d.case_tag == CaseTag::I) {
    d.a2_at_0 = lim.a2_at_0;
  } else {
    d.a11 = lim.k_a1_at_0;
    d.a2_prime_0 = lim.a2_over_k_at_0;
  }
  d.jump_log_slot = std::make_shared<LazyJumpLog>();
  return d;
}

SpectralData soliton_spectral_fixture(double A, int gamma0, const GridOptions& opt) {
  require(A > 0.0, Errc::invalid_argument, "fixture needs A > 0");
  require(gamma0 == 1 || gamma0 == -1, Errc::invalid_argument, "gamma0 must be +1 or -1");
  auto f = std::make_shared<ReflectionlessSpectral>(A);
  SpectralData d;
  d.functions = f;
  d.options = opt;
  d.A = A;
  d.sigma = +1;
  d.k_grid = symmetric_grid(opt.k_min, opt.k_max, opt.n);
  d.samples.resize(d.k_grid.size());
  d.reflections.resize(d.k_grid.size());
  for (size_t i = 0; i < d.k_grid.size(); ++i) {
    double k = d.k_grid[i];
    ScatteringSample s;
    s.k = k;
    s.a1 = f->a1(k);
    s.a2 = f->a2(k);
    s.b = 0.0;
    s.S = {s.a1, 0.0, 0.0, s.a2};
    d.samples[i] = s;
    d.reflections[i] = {k, 0.0, 0.0};
  }
  d.kappa = 0.5 * A;
  d.a1_prime = -kImag / d.kappa;
  d.gamma0 = gamma0;
  d.case_tag = CaseTag::II;
  d.a11 = A / (2.0 * kImag);
  d.a2_prime_0 = 2.0 * kImag / A;
  d.jump_log_slot = std::make_shared<LazyJumpLog>();
  return d;
}

namespace {

class TrivialJumpLog final : public JumpLog {
 public:
  Complex logw(double) const override { return 0.0; }
  bool trivial() const override { return true; }
};

class TabulatedJumpLog final : public JumpLog {
 public:
  TabulatedJumpLog(const SpectralFunctions& f, double s_min, double s_max, int n) {
    s_min_ = s_min;
    s_max_ = s_max;
    n_ = n;
    dt_ = std::log(s_max / s_min) / double(n - 1);
    for (int side = 0; side < 2; ++side) {
      log_abs_[side].resize(size_t(n));
      arg_[side].resize(size_t(n));
    }
    // Sample w on both sides in parallel, then unwrap inward from the anchors
    // at +-s_max where the argument has already decayed to ~0.
    std::vector<Complex> wp, wm;
    wp.resize(size_t(n));
    wm.resize(size_t(n));
    parallel_for(size_t(n), [&](size_t j) {
      double s = s_min * std::exp(dt_ * double(j));
      wp[j] = f.one_plus_r1r2(s);
      wm[j] = f.one_plus_r1r2(-s);
    });
    for (int side = 0; side < 2; ++side) {
      const auto& w = (side == 0) ? wp : wm;
      double running = std::arg(w[size_t(n - 1)]);
      for (int j = n - 1; j >= 0; --j) {
        require(std::abs(w[size_t(j)]) > 1e-300, Errc::endpoint_divergence,
                "1 + r1 r2 vanished along the axis");
        if (j < n - 1) {
          double inc = std::arg(w[size_t(j)] / w[size_t(j + 1)]);
          require(std::abs(inc) < 2.5, Errc::log_branch_jump,
                  "jump log varies too fast for the unwrap grid");
          running += inc;
        }
        log_abs_[side][size_t(j)] = std::log(std::abs(w[size_t(j)]));
        arg_[side][size_t(j)] = running;
      }
      // O(s^-2) tail: Richardson from S and S/2 removes the 1/s^3 term
      long j_half = (n - 1) - std::lround(std::log(2.0) / dt_);
      double s_half = s_min * std::exp(dt_ * double(j_half));
      Complex l_full(log_abs_[side][size_t(n - 1)], arg_[side][size_t(n - 1)]);
      Complex l_half(log_abs_[side][size_t(j_half)], arg_[side][size_t(j_half)]);
      tail_c_[side] = 2.0 * (s_max * s_max) * l_full - (s_half * s_half) * l_half;
    }
  }

  Complex logw(double s) const override {
    require(s != 0.0, Errc::invalid_argument, "log jump undefined at s = 0");
    int side = (s > 0.0) ? 0 : 1;
    double as = std::abs(s);
    if (as >= s_max_) return tail_c_[side] / (s * s);
    require(as >= s_min_, Errc::invalid_argument, "log jump sampled below the table window");
    double u = std::log(as / s_min_) / dt_;
    long i = std::clamp<long>(long(std::floor(u)), 0, n_ - 2);
    double t = u - double(i);
    auto interp = [&](const std::vector<double>& v) {
      auto at = [&](long j) { return v[size_t(std::clamp<long>(j, 0, n_ - 1))]; };
      double pm1 = at(i - 1), p0 = at(i), p1 = at(i + 1), p2 = at(i + 2);
      return p0 + 0.5 * t * (p1 - pm1 + t * (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2 +
                                             t * (3.0 * (p0 - p1) + p2 - pm1)));
    };
    return Complex(interp(log_abs_[side]), interp(arg_[side]));
  }

 private:
  double s_min_ = 0.0, s_max_ = 0.0, dt_ = 0.0;
  long n_ = 0;
  std::vector<double> log_abs_[2], arg_[2];
  Complex tail_c_[2];
};

}  // namespace

std::shared_ptr<const JumpLog> make_jump_log(const SpectralFunctions& f, double s_min,
                                             double s_max, int n_per_side) {
  if (f.reflectionless()) return std::make_shared<TrivialJumpLog>();
  return std::make_shared<TabulatedJumpLog>(f, s_min, s_max, n_per_side);
}

NuValue nu_at(const SpectralFunctions& f, const JumpLog& logw, double k0) {
  require(k0 > 0.0, Errc::invalid_argument, "k0 must be positive");
  NuValue out;
  if (logw.trivial()) {
    out.nu = 0.0;
    out.Delta = 0.0;
    return out;
  }
  Complex w0 = f.one_plus_r1r2(-k0);
  require(std::abs(w0) > 1e-10, Errc::endpoint_divergence, "1 + r1 r2 ~ 0 at -k0");
  double Delta = logw.logw(-k0).imag();
  require(std::abs(Delta) < kPi, Errc::winding_out_of_range, "Delta(-k0) outside (-pi, pi)");
  out.Delta = Delta;
  out.nu = -std::log(std::abs(w0)) / (2.0 * kPi) - kImag * Delta / (2.0 * kPi);
  require(std::abs(out.nu.imag()) < 0.5, Errc::nu_out_of_range, "Im nu outside (-1/2, 1/2)");
  return out;
}

DeltaCache DeltaCache::build(const SpectralData& data, double xi, const DeltaOptions& opt) {
  require(xi < 0.0, Errc::invalid_argument, "delta cache is defined for xi < 0");
  DeltaCache c;
  c.xi_ = xi;
  c.k0_ = std::sqrt(-xi);
  c.quad_ = opt.quad;
  require(c.k0_ >= 2.0 * opt.table_s_min, Errc::invalid_argument,
          "k0 below the tabulated spectral window");
  c.logw_ = data.jump_log(opt.table_s_min, opt.table_s_max, opt.table_n_per_side);
  double S = std::max(opt.table_s_max, 2.0 * c.k0_);
  c.contour_ = {ContourSegment::ray_minus(-S), ContourSegment::interval(-S, -c.k0_),
                ContourSegment::interval(c.k0_, S), ContourSegment::ray_plus(S)};

  if (c.logw_->trivial()) {
    c.nu_ = 0.0;
    c.Delta_ = 0.0;
    c.delta0_ = 1.0;
    c.delta_ik_ = 1.0;
    c.chi_ = 0.0;
    c.chihat_ = 0.0;
    c.r1_mk0_ = 0.0;
    c.r2_mk0_ = 0.0;
    return c;
  }

  NuValue nu = nu_at(*data.functions, *c.logw_, c.k0_);
  c.nu_ = nu.nu;
  c.Delta_ = nu.Delta;
  c.r1_mk0_ = data.functions->r1(-c.k0_);
  c.r2_mk0_ = data.functions->r2(-c.k0_);

  c.delta0_ = c.delta(Complex(0.0, 0.0));
  c.delta_ik_ = c.delta(Complex(0.0, data.kappa));

  // chi-hat at -k0 by parts; the endpoint pieces are regularized so no
  // numerical derivative of log(1 + r1 r2) is ever needed.
  const double k0 = c.k0_;
  Complex L_mk0 = c.logw_->logw(-k0);
  Complex L_pk0 = c.logw_->logw(k0);
  require(std::abs(L_mk0.real()) < 23.0 && std::abs(L_pk0.real()) < 23.0,
          Errc::endpoint_divergence, "|1 + r1 r2| ~ 0 at an endpoint");
  auto L = [&](double s) { return c.logw_->logw(s); };

  Complex log_m2k0 = std::log(2.0 * k0) + kImag * kPi;  // log(-2 k0) convention
  auto over_shifted = [&](double s) { return L(s) / (s + k0); };
  Complex right = -log_m2k0 * L_pk0 -
                  integrate_segment(over_shifted, ContourSegment::interval(k0, S), c.quad_) -
                  integrate_segment(over_shifted, ContourSegment::ray_plus(S), c.quad_);
  double m = -k0 - std::max(1.0, k0);
  Complex left_outer =
      std::log(-k0 - m) * L(m) -
      integrate_segment(over_shifted, ContourSegment::ray_minus(-S), c.quad_) -
      integrate_segment(over_shifted, ContourSegment::interval(-S, m), c.quad_);
  Complex left_inner =
      -std::log(-k0 - m) * (L(m) - L_mk0) -
      integrate_segment([&](double s) { return (L(s) - L_mk0) / (s + k0); },
                        ContourSegment::interval(m, -k0), c.quad_);
  c.chihat_ = -(right + left_outer + left_inner) / (2.0 * kPi * kImag);
  c.chi_ = c.chihat_ - 2.0 * c.nu_.imag() * log_m2k0;
  return c;
}

Complex DeltaCache::delta(Complex k) const {
  if (logw_->trivial()) return 1.0;
  auto g = [&](double s) { return logw_->logw(s); };
  return std::exp(cauchy_contour_integral(g, k, contour_, quad_));
}

Complex DeltaCache::delta_boundary(double k, int side) const {
  if (logw_->trivial()) return 1.0;
  require(std::abs(k) > k0_, Errc::invalid_argument, "boundary value requested off the rays");
  auto g = [&](double s) { return logw_->logw(s); };
  return std::exp(cauchy_boundary_value(g, k, side, contour_, quad_));
}

Complex DeltaCache::chi_hat(Complex k) const {
  if (logw_->trivial()) return 0.0;
  auto g = [&](double s) { return logw_->logw(s); };
  Complex log_delta = cauchy_contour_integral(g, k, contour_, quad_);
  return log_delta - kImag * nu_ * std::log(k + k0_) +
         kImag * std::conj(nu_) * std::log(k - k0_);
}

void write_spectral_csv(const SpectralData& data, const std::string& path,
                        const std::vector<std::string>& metadata) {
  std::vector<std::string> lines = metadata_block(metadata);
  lines.push_back("k,a1_re,a1_im,a2_re,a2_im,b_re,b_im,r1_re,r1_im,r2_re,r2_im");
  for (size_t i = 0; i < data.k_grid.size(); ++i) {
    const auto& s = data.samples[i];
    const auto& r = data.reflections[i];
    lines.push_back(csv_row({s.k, s.a1.real(), s.a1.imag(), s.a2.real(), s.a2.imag(), s.b.real(),
                             s.b.imag(), r.r1.real(), r.r1.imag(), r.r2.real(), r.r2.imag()}));
  }
  write_text_file(path, lines);
}

std::string delta_jsonl_line(const DeltaCache& c) {
  auto field = [](const char* k, double v) {
    return std::string("\"") + k + "\": " + format_double(v);
  };
  return "{" + field("xi", c.xi()) + ", " + field("k0", c.k0()) + ", " +
         field("nu_re", c.nu().real()) + ", " + field("nu_im", c.nu().imag()) + ", " +
         field("Delta", c.Delta()) + ", " + field("delta0_re", c.delta_at_0().real()) + ", " +
         field("delta0_im", c.delta_at_0().imag()) + ", " +
         field("chi_re", c.chi_at_minus_k0().real()) + ", " +
         field("chi_im", c.chi_at_minus_k0().imag()) + "}";
}

void write_delta_jsonl(const std::vector<DeltaCache>& caches, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(caches.size());
  for (const auto& c : caches) lines.push_back(delta_jsonl_line(c));
  write_text_file(path, lines);
}

}  // namespace nmkdv
