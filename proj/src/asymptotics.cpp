#include "asymptotics.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "dataio.hpp"
#include "specfun.hpp"

namespace nmkdv {

const char* sector_name(Sector s) {
  switch (s) {
    case Sector::R_I_L: return "R_I_L";
    case Sector::R_I_M: return "R_I_M";
    case Sector::R_I_R: return "R_I_R";
    case Sector::R_II: return "R_II";
    case Sector::R_III_L: return "R_III_L";
    case Sector::R_III_M: return "R_III_M";
    case Sector::R_III_R: return "R_III_R";
    case Sector::R_IV: return "R_IV";
    case Sector::Boundary: return "Boundary";
  }
  return "?";
}

Complex phase_theta(Complex k, double xi) { return 4.0 * k * k * k + 12.0 * k * xi; }

std::pair<Complex, Complex> phase_saddles(double xi) {
  if (xi < 0.0) {
    double k0 = std::sqrt(-xi);
    return {Complex(k0, 0.0), Complex(-k0, 0.0)};
  }
  double k0 = std::sqrt(xi);
  return {Complex(0.0, k0), Complex(0.0, -k0)};
}

Sector classify_sector(double x, double t, double kappa, double boundary_tol) {
  require(t != 0.0, Errc::on_time_axis, "sector classification undefined at t = 0");
  require(kappa > 0.0, Errc::invalid_argument, "kappa must be positive");
  double xi = x / (12.0 * t);
  if (std::abs(xi) <= boundary_tol) return Sector::Boundary;
  if (x < 0.0 && t > 0.0) return Sector::R_II;
  if (x > 0.0 && t < 0.0) return Sector::R_IV;
  double d1 = kappa * kappa / 3.0, d2 = kappa * kappa;
  if (std::abs(xi - d1) <= boundary_tol || std::abs(xi - d2) <= boundary_tol) {
    return Sector::Boundary;
  }
  bool forward = t > 0.0;
  if (xi < d1) return forward ? Sector::R_I_L : Sector::R_III_R;
  if (xi < d2) return forward ? Sector::R_I_M : Sector::R_III_M;
  return forward ? Sector::R_I_R : Sector::R_III_L;
}

std::pair<Complex, Complex> beta_gamma_from_q(Complex nu, Complex q1, Complex q2) {
  Complex pre = std::sqrt(2.0 * kPi) * std::exp(-0.5 * kPi * nu);
  Complex beta = (std::abs(q1) == 0.0)
                     ? Complex(0.0)
                     : pre * std::exp(kImag * kPi / 4.0) * rgamma_complex(-kImag * nu) / q1;
  Complex gamma = (std::abs(q2) == 0.0)
                      ? Complex(0.0)
                      : -pre * std::exp(-kImag * kPi / 4.0) * rgamma_complex(kImag * nu) / q2;
  return {beta, gamma};
}

ZmParams asym_params(const SpectralData& data, const DeltaCache& cache, double t,
                     std::optional<double> alpha_override) {
  ZmParams p;
  p.k0 = cache.k0();
  p.eta = 0.5 * p.k0;
  p.rho = p.eta * std::sqrt(48.0 * p.k0);
  p.tau = -12.0 * t * p.k0 * p.k0 * p.k0;
  p.phi0 = kImag * 16.0 * p.k0 * p.k0 * p.k0;
  p.epsilon = std::min(0.5 * p.k0, 0.5 * std::hypot(p.k0, data.kappa));

  Complex r1 = cache.r1_at_minus_k0(), r2 = cache.r2_at_minus_k0();
  p.degenerate = cache.reflectionless() || std::abs(r1 * r2) == 0.0;
  if (p.degenerate) {
    p.nu = 0.0;
    p.q1 = p.q2 = p.beta = p.gamma = 0.0;
  } else {
    p.nu = cache.nu();
    require(std::abs(p.nu.imag()) < 0.5, Errc::nu_out_of_range, "Im nu outside (-1/2, 1/2)");
    Complex chi = cache.chi_at_minus_k0();
    Complex twist = std::exp(2.0 * kImag * p.nu * std::log(4.0));
    p.q1 = std::exp(-2.0 * chi) * r1 * twist;
    p.q2 = std::exp(2.0 * chi) * r2 / twist;
    auto bg = beta_gamma_from_q(p.nu, p.q1, p.q2);
    p.beta = bg.first;
    p.gamma = bg.second;
  }
  p.lambda = std::max(0.5, 2.0 * std::abs(p.nu.imag()));
  if (alpha_override) {
    require(*alpha_override > p.lambda && *alpha_override < 1.0, Errc::invalid_argument,
            "alpha must lie in (lambda, 1)");
    p.alpha = *alpha_override;
  } else {
    p.alpha = 0.5 * (p.lambda + 1.0);
  }
  return p;
}

namespace {

void fill_zm(AsymptoticResult& r, const ZmParams& p) {
  r.k0 = p.k0;
  r.eta = p.eta;
  r.rho = p.rho;
  r.tau = p.tau;
  r.alpha = p.alpha;
  r.epsilon = p.epsilon;
  r.nu = p.nu;
  r.phi0 = p.phi0;
  r.beta = p.beta;
  r.gamma = p.gamma;
  r.q1 = p.q1;
  r.q2 = p.q2;
}

void check_ray(const DeltaCache& cache, double x, double t) {
  double xi = x / (12.0 * t);
  require(std::abs(xi - cache.xi()) <= 1e-9 * std::max(1.0, std::abs(xi)), Errc::invalid_argument,
          "delta cache was built for a different ray xi");
}

std::string order_text(const char* base, double expo) {
  return std::string("O(eps*") + base + "^(" + format_double(expo) + "))";
}

double r1_exponent(const ZmParams& p) {
  return p.nu.imag() >= 0.0 ? -(1.0 + p.alpha) / 2.0
                            : -(1.0 + p.alpha) / 2.0 + 2.0 * std::abs(p.nu.imag());
}
double r2_exponent(const ZmParams& p) {
  return p.nu.imag() >= 0.0 ? -(1.0 + p.alpha) / 2.0 + 2.0 * std::abs(p.nu.imag())
                            : -(1.0 + p.alpha) / 2.0;
}
double r3_exponent(const ZmParams& p) {
  return p.nu.imag() == 0.0 ? -(1.0 + p.alpha) / 2.0
                            : -(1.0 + p.alpha) / 2.0 + 2.0 * std::abs(p.nu.imag());
}

}  // namespace

AsymptoticResult evaluate_RII(const SpectralData& data, const DeltaCache& cache, double x,
                              double t, const AsymOptions& opt) {
  require(classify_sector(x, t, data.kappa) == Sector::R_II, Errc::wrong_sector,
          "(x,t) is not in the x<0, t>0 sector");
  check_ray(cache, x, t);
  ZmParams p = asym_params(data, cache, t, opt.alpha);
  AsymptoticResult r;
  r.sector = Sector::R_II;
  fill_zm(r, p);

  double mtau = -p.tau;  // 12 t k0^3 > 0 here
  r.u_leading = 0.0;
  if (p.degenerate) {
    r.u_subleading = 0.0;
  } else {
    double amp = std::pow(mtau, -0.5 - p.nu.imag());
    double phase = 16.0 * p.k0 * p.k0 * p.k0 * t + p.nu.real() * std::log(mtau);
    r.u_subleading = -4.0 * p.eta * amp * (p.gamma * std::exp(kImag * phase)).real();
  }
  r.u_total = r.u_leading + r.u_subleading;
  r.error_exponent = r1_exponent(p);
  r.error_order = order_text("(-tau)", r.error_exponent);
  return r;
}

AsymptoticResult evaluate_RIV(const SpectralData& data, const DeltaCache& cache, double x,
                              double t, const AsymOptions& opt) {
  require(classify_sector(x, t, data.kappa) == Sector::R_IV, Errc::wrong_sector,
          "(x,t) is not in the x>0, t<0 sector");
  check_ray(cache, x, t);
  ZmParams p = asym_params(data, cache, t, opt.alpha);
  AsymptoticResult r;
  r.sector = Sector::R_IV;
  fill_zm(r, p);

  Complex delta0 = cache.delta_at_0();
  require(std::abs(delta0.imag()) <= 1e-6 * std::max(1.0, std::abs(delta0)),
          Errc::not_converged, "delta(0, xi) failed the reality check");
  double d0 = delta0.real();
  r.u_leading = data.A * d0 * d0;

  double tau = p.tau;  // > 0 for t < 0
  double imnu = p.nu.imag();
  auto term_a = [&]() {
    // c0 = A delta0^2 / (2i): c0^2 = -A^2 delta0^4 / 4, real
    double c0sq = -0.25 * data.A * data.A * d0 * d0 * d0 * d0;
    double amp = std::pow(tau, -0.5 - imnu);
    double phase = 16.0 * p.k0 * p.k0 * p.k0 * t + p.nu.real() * std::log(tau);
    return -4.0 * c0sq / (p.k0 * p.k0) * p.eta * amp *
           (kImag * p.gamma * std::exp(kImag * phase)).real();
  };
  auto term_b = [&]() {
    double amp = std::pow(tau, -0.5 + imnu);
    double phase = -16.0 * p.k0 * p.k0 * p.k0 * t - p.nu.real() * std::log(tau);
    return 4.0 * p.eta * amp * (p.beta * std::exp(kImag * phase)).real();
  };

  if (p.degenerate) {
    r.u_subleading = 0.0;
    r.error_exponent = r3_exponent(p);
  } else if (imnu <= -p.alpha / 6.0) {
    r.u_subleading = term_a();
    r.error_exponent = r1_exponent(p);
  } else if (imnu >= p.alpha / 6.0) {
    r.u_subleading = term_b();
    r.error_exponent = r2_exponent(p);
  } else {
    r.u_subleading = term_a() + term_b();
    r.error_exponent = r3_exponent(p);
  }
  r.u_total = r.u_leading + r.u_subleading;
  r.error_order = order_text("tau", r.error_exponent);
  return r;
}

namespace {

void fill_soliton_constants(AsymptoticResult& r, const SpectralData& data) {
  require(std::abs(data.a1_prime) > 1e-12, Errc::invalid_argument,
          "a1'(i kappa) vanished; the discrete zero is not simple");
  Complex denom1 = 2.0 * kImag * data.a1_prime * data.kappa * data.kappa;
  r.C1 = data.A * double(data.gamma0) / denom1;
  r.C2 = 2.0 * kImag * data.a1_prime / double(data.gamma0);
}

double safe_pole_formula(double numer, double coef, double w, double offset) {
  // numer / (coef * e^w + offset), with the exponential saturated
  if (w > 700.0) return 0.0;
  double den = coef * std::exp(w) + offset;
  require(std::abs(den) > 1e-12, Errc::singular_denominator,
          "asymptotic denominator vanished on this ray");
  return numer / den;
}

}  // namespace

AsymptoticResult evaluate_RI(const SpectralData& data, double x, double t,
                             const AsymOptions& opt) {
  Sector s = classify_sector(x, t, data.kappa);
  require(s == Sector::R_I_L || s == Sector::R_I_M || s == Sector::R_I_R, Errc::wrong_sector,
          "(x,t) is not in the x>0, t>0 sector");
  AsymptoticResult r;
  r.sector = s;
  fill_soliton_constants(r, data);
  double xi = x / (12.0 * t);
  double kappa = data.kappa;
  r.kappa_delta = opt.kappa_delta.value_or(0.5 * kappa);
  require(r.kappa_delta > 0.0 && r.kappa_delta < kappa, Errc::invalid_argument,
          "kappa_delta must lie in (0, kappa)");

  if (s == Sector::R_I_L) {
    require(std::abs(r.C1.imag()) <= 1e-8 * std::max(1.0, std::abs(r.C1)), Errc::not_converged,
            "C1 failed the reality check");
    double w = -2.0 * kappa * x + 8.0 * kappa * kappa * kappa * t;
    r.u_leading = safe_pole_formula(data.A, -r.C1.real(), w, 1.0);
    r.error_exponent = -16.0 * std::pow(xi, 1.5);
    r.error_order = "O(t^(-1/2)*exp(" + format_double(r.error_exponent) + "*t))";
  } else if (s == Sector::R_I_M) {
    r.u_leading = data.A;
    r.error_exponent = -16.0 * std::pow(xi, 1.5);
    r.error_order = "O(t^(-1/2)*exp(" + format_double(r.error_exponent) + "*t))";
  } else {
    r.u_leading = data.A;
    double kd = r.kappa_delta;
    r.error_exponent = -8.0 * kd * (3.0 * xi - kd * kd);
    r.error_order = "O(t^(-1/2)*exp(" + format_double(r.error_exponent) + "*t))";
  }
  r.u_subleading = 0.0;
  r.u_total = r.u_leading;
  return r;
}

AsymptoticResult evaluate_RIII(const SpectralData& data, double x, double t,
                               const AsymOptions& opt) {
  Sector s = classify_sector(x, t, data.kappa);
  require(s == Sector::R_III_L || s == Sector::R_III_M || s == Sector::R_III_R,
          Errc::wrong_sector, "(x,t) is not in the x<0, t<0 sector");
  AsymptoticResult r;
  r.sector = s;
  fill_soliton_constants(r, data);
  double xi = x / (12.0 * t);
  double kappa = data.kappa;
  r.kappa_delta = opt.kappa_delta.value_or(0.5 * kappa);
  require(r.kappa_delta > 0.0 && r.kappa_delta < kappa, Errc::invalid_argument,
          "kappa_delta must lie in (0, kappa)");

  if (s == Sector::R_III_R) {
    require(std::abs(r.C2.imag()) <= 1e-8 * std::max(1.0, std::abs(r.C2)), Errc::not_converged,
            "C2 failed the reality check");
    // Mirror image of the R_I_L soliton under (x,t) -> (-x,-t): the
    // denominator carries exp(+2 kappa x - 8 kappa^3 t).
    double w = 2.0 * kappa * x - 8.0 * kappa * kappa * kappa * t;
    r.u_leading = safe_pole_formula(4.0, r.C2.real(), w, -data.A / (kappa * kappa));
    r.error_exponent = 16.0 * std::pow(xi, 1.5);
    r.error_order = "O((-t)^(-1/2)*exp(" + format_double(r.error_exponent) + "*t))";
  } else if (s == Sector::R_III_M) {
    r.u_leading = 0.0;
    r.error_exponent = 16.0 * std::pow(xi, 1.5);
    r.error_order = "O((-t)^(-1/2)*exp(" + format_double(r.error_exponent) + "*t))";
  } else {
    r.u_leading = 0.0;
    double kd = r.kappa_delta;
    r.error_exponent = 8.0 * kd * (3.0 * xi - kd * kd);
    r.error_order = "O((-t)^(-1/2)*exp(" + format_double(r.error_exponent) + "*t))";
  }
  r.u_subleading = 0.0;
  r.u_total = r.u_leading;
  return r;
}

AsymptoticResult evaluate_asym(const SpectralData& data, const DeltaCache* cache, double x,
                               double t, const AsymOptions& opt) {
  Sector s = classify_sector(x, t, data.kappa);
  switch (s) {
    case Sector::R_II:
      require(cache != nullptr, Errc::invalid_argument, "R_II needs a delta cache");
      return evaluate_RII(data, *cache, x, t, opt);
    case Sector::R_IV:
      require(cache != nullptr, Errc::invalid_argument, "R_IV needs a delta cache");
      return evaluate_RIV(data, *cache, x, t, opt);
    case Sector::R_I_L:
    case Sector::R_I_M:
    case Sector::R_I_R:
      return evaluate_RI(data, x, t, opt);
    case Sector::R_III_L:
    case Sector::R_III_M:
    case Sector::R_III_R:
      return evaluate_RIII(data, x, t, opt);
    case Sector::Boundary: {
      AsymptoticResult r;
      r.sector = Sector::Boundary;
      double nan = std::numeric_limits<double>::quiet_NaN();
      r.u_leading = r.u_subleading = r.u_total = nan;
      r.error_order = "none";
      return r;
    }
  }
  fail(Errc::invalid_argument, "unreachable sector");
}

void write_asym_sweep_csv(const SpectralData& data, const std::vector<double>& xs,
                          const std::vector<double>& ts, const AsymOptions& opt,
                          const std::string& path, const std::vector<std::string>& metadata) {
  std::vector<std::string> lines = metadata_block(metadata);
  lines.push_back("x,t,xi,sector,u_leading,u_subleading,u_total,error_order_exponent");
  std::map<long long, DeltaCache> caches;  // keyed by quantized xi
  for (double t : ts) {
    for (double x : xs) {
      if (t == 0.0) continue;
      double xi = x / (12.0 * t);
      const DeltaCache* cache = nullptr;
      if (xi < 0.0 && classify_sector(x, t, data.kappa) != Sector::Boundary) {
        long long key = std::llround(xi * 1e12);
        auto it = caches.find(key);
        if (it == caches.end()) {
          DeltaOptions dopt;
          dopt.quad = data.options.quad;
          it = caches.emplace(key, DeltaCache::build(data, xi, dopt)).first;
        }
        cache = &it->second;
      }
      AsymptoticResult r = evaluate_asym(data, cache, x, t, opt);
      lines.push_back(csv_row({x, t, xi}) + "," + sector_name(r.sector) + "," +
                      csv_row({r.u_leading, r.u_subleading, r.u_total, r.error_exponent}));
    }
  }
  write_text_file(path, lines);
}

double subleading_slope(const SpectralData& data, const DeltaCache& cache, bool riv) {
  double k0 = cache.k0();
  double period = 2.0 * kPi / (16.0 * k0 * k0 * k0);
  std::vector<double> lx, ly;
  for (int i = 0; i < 12; ++i) {
    double t_mag = 1e2 * std::pow(1e4, double(i) / 11.0);
    double envelope = 0.0;
    for (int j = 0; j < 48; ++j) {
      double t = t_mag + period * double(j) / 48.0;
      if (riv) t = -t;
      double x = 12.0 * t * cache.xi();
      AsymptoticResult r = riv ? evaluate_RIV(data, cache, x, t, {})
                               : evaluate_RII(data, cache, x, t, {});
      envelope = std::max(envelope, std::abs(r.u_subleading));
    }
    lx.push_back(std::log(t_mag));
    ly.push_back(std::log(envelope));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double n = double(lx.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Parabolic cylinder model

ParametrixModel::ParametrixModel(Complex nu, Complex q1, Complex q2) : nu_(nu), q1_(q1), q2_(q2) {
  require(std::abs(1.0 + q1 * q2) > 1e-10, Errc::degenerate_jump, "1 + q1 q2 ~ 0");
  auto bg = beta_gamma_from_q(nu, q1, q2);
  beta_ = bg.first;
  gamma_ = bg.second;
  // i nu / beta and i nu / gamma in pole-free form (finite as nu -> 0):
  Complex pre = std::exp(0.5 * kPi * nu) / std::sqrt(2.0 * kPi);
  c21_ = -q1 * gamma_complex(1.0 - kImag * nu) * pre * std::exp(-kImag * kPi / 4.0);
  c12_ = -q2 * gamma_complex(1.0 + kImag * nu) * pre * std::exp(kImag * kPi / 4.0);
}

Mat2 ParametrixModel::jump_matrix() const { return {1.0 + q1_ * q2_, q2_, q1_, 1.0}; }

Mat2 ParametrixModel::m0(Complex zeta, int half_plane) const {
  require(half_plane == 1 || half_plane == -1, Errc::invalid_argument, "half_plane is +1 or -1");
  Complex nu = nu_;
  Complex ep = std::exp(kPi * nu / 4.0);      // e^{pi nu / 4}
  Complex em3 = std::exp(-3.0 * kPi * nu / 4.0);
  Mat2 m;
  if (half_plane > 0) {
    Complex rot_a = std::exp(Complex(0.0, -3.0 * kPi / 4.0));
    Complex rot_b = std::exp(Complex(0.0, -kPi / 4.0));
    m.m00 = em3 * weber_d(kImag * nu, rot_a * zeta);
    m.m01 = -c12_ * ep * rot_b * weber_d(-kImag * nu - 1.0, rot_b * zeta);
    m.m10 = c21_ * em3 * rot_a * weber_d(kImag * nu - 1.0, rot_a * zeta);
    m.m11 = ep * weber_d(-kImag * nu, rot_b * zeta);
  } else {
    Complex rot_a = std::exp(Complex(0.0, kPi / 4.0));
    Complex rot_b = std::exp(Complex(0.0, 3.0 * kPi / 4.0));
    m.m00 = ep * weber_d(kImag * nu, rot_a * zeta);
    m.m01 = -c12_ * em3 * rot_b * weber_d(-kImag * nu - 1.0, rot_b * zeta);
    m.m10 = c21_ * ep * rot_a * weber_d(kImag * nu - 1.0, rot_a * zeta);
    m.m11 = em3 * weber_d(-kImag * nu, rot_b * zeta);
  }
  return m;
}

Mat2 ParametrixModel::m_pc(Complex zeta, int half_plane) const {
  require(std::abs(zeta) > 0.0, Errc::invalid_argument, "m_pc undefined at zeta = 0");
  Mat2 m = m0(zeta, half_plane);
  double a = std::arg(zeta);
  Mat2 p = Mat2::identity();
  Complex denom = 1.0 + q1_ * q2_;
  if (a > 0.0 && a < kPi / 4.0) {
    p = {1.0, 0.0, -q1_, 1.0};
  } else if (a < 0.0 && a > -kPi / 4.0) {
    p = {1.0, q2_, 0.0, 1.0};
  } else if (a > 3.0 * kPi / 4.0 && a < kPi) {
    p = {1.0, -q2_ / denom, 0.0, 1.0};
  } else if (a < -3.0 * kPi / 4.0 && a > -kPi) {
    p = {1.0, 0.0, q1_ / denom, 1.0};
  }
  Complex d1 = std::exp(-kImag * nu_ * std::log(zeta) + kImag * zeta * zeta / 4.0);
  Complex d2 = std::exp(kImag * nu_ * std::log(zeta) - kImag * zeta * zeta / 4.0);
  Mat2 mp = m * p;
  return {mp.m00 * d1, mp.m01 * d2, mp.m10 * d1, mp.m11 * d2};
}

double ParametrixModel::jump_residual(double zeta) const {
  Mat2 lhs = m0(zeta, -1).inverse() * m0(zeta, +1);
  return (lhs - jump_matrix()).max_abs();
}

Complex ParametrixModel::reconstruct_q1(double zeta) const {
  Mat2 lhs = m0(zeta, -1).inverse() * m0(zeta, +1);
  return lhs.m10;
}

ParametrixModel::Recovered ParametrixModel::recover_from_expansion(double radius) const {
  // m1 = (1/2 pi i) \oint (m_pc - I) d zeta on |zeta| = R; every higher-order
  // term integrates to zero, and the ray jumps crossed by the circle are
  // O(e^{-R^2/2}). Trapezoid nodes are offset off the rays.
  const int n = 1024;
  Mat2 sum;
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * kPi * (double(j) + 0.5) / double(n);
    Complex zeta = radius * std::exp(Complex(0.0, th));
    int hp = zeta.imag() >= 0.0 ? 1 : -1;
    Mat2 m = m_pc(zeta, hp) - Mat2::identity();
    sum.m00 += m.m00 * zeta;
    sum.m01 += m.m01 * zeta;
    sum.m10 += m.m10 * zeta;
    sum.m11 += m.m11 * zeta;
  }
  Complex m12 = sum.m01 / double(n);
  Complex m21 = sum.m10 / double(n);
  return {kImag * m12, -kImag * m21};
}

}  // namespace nmkdv
