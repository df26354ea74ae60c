#include "scattering.hpp"

#include <algorithm>
#include <cmath>

#include "odesolve.hpp"

namespace nmkdv {

Mat2 background_normalizer(double A, int sigma, Complex k, int side) {
  require(side == 1 || side == -1, Errc::invalid_argument, "side must be +1 or -1");
  require(std::abs(k) >= 1e-12, Errc::singular_at_origin, "N_pm singular at k = 0");
  Complex off = A / (2.0 * kImag * k);
  if (side > 0) return {1.0, off, 0.0, 1.0};
  return {1.0, 0.0, double(sigma) * off, 1.0};
}

Mat2 background_solution(double A, int sigma, Complex k, double x, double t, int side) {
  Mat2 n = background_normalizer(A, sigma, k, side);
  Complex phase = std::exp(-(kImag * k * x + 4.0 * kImag * k * k * k * t));
  return {n.m00 * phase, n.m01 / phase, n.m10 * phase, n.m11 / phase};
}

namespace {

// Column ODEs of psi_x + ik [sigma3, psi] = U psi at t = 0; the two columns
// decouple.  col 1 carries (psi11, psi21), col 2 carries (psi12, psi22).
struct ColumnRhs {
  const StepProfile& profile;
  Complex k;
  int column;

  void operator()(double x, const CVec<2>& y, CVec<2>& dy) const {
    double u_here = profile.u0(x);
    double u_mirror = profile.u0(-x);
    double s = double(profile.sigma);
    if (column == 1) {
      dy[0] = u_here * y[1];
      dy[1] = 2.0 * kImag * k * y[1] - s * u_mirror * y[0];
    } else {
      dy[0] = -2.0 * kImag * k * y[0] + u_here * y[1];
      dy[1] = -s * u_mirror * y[0];
    }
  }
};

// March between breakpoints so discontinuities of U never sit inside a step.
void march(const StepProfile& profile, Complex k, int column, CVec<2>& y, double from, double to,
           const OdeOptions& ode) {
  if (from == to) return;
  ColumnRhs rhs{profile, k, column};
  std::vector<double> stops;
  stops.push_back(from);
  if (to > from) {
    for (double b : profile.breakpoints) {
      if (b > from && b < to) stops.push_back(b);
    }
  } else {
    for (auto it = profile.breakpoints.rbegin(); it != profile.breakpoints.rend(); ++it) {
      if (*it < from && *it > to) stops.push_back(*it);
    }
  }
  stops.push_back(to);
  for (size_t i = 0; i + 1 < stops.size(); ++i) {
    integrate_ode<2>(rhs, stops[i], stops[i + 1], y, ode);
  }
}

void check_gauge(const StepProfile& profile, Complex k, const JostOptions& opt) {
  require(std::abs(k.imag()) * profile.support <= opt.im_gauge_cap, Errc::overflow_gauge,
          "|Im k| * support exceeds the validated gauge window");
}

void check_column_analytic(Complex k, int which_psi, int column) {
  if (k.imag() == 0.0) return;
  bool upper = k.imag() > 0.0;
  bool analytic = upper ? (which_psi == 1 ? column == 1 : column == 2)
                        : (which_psi == 1 ? column == 2 : column == 1);
  require(analytic, Errc::non_analytic_column_request,
          "requested Jost column is not analytic in this half-plane");
}

CVec<2> start_column(const StepProfile& profile, Complex k, int which_psi, int column) {
  Mat2 n = background_normalizer(profile.background, profile.sigma, k,
                                 which_psi == 1 ? -1 : +1);
  if (column == 1) return {n.m00, n.m10};
  return {n.m01, n.m11};
}

}  // namespace

std::array<Complex, 2> jost_column(const StepProfile& profile, Complex k, int which_psi,
                                   int column, double x, const JostOptions& opt) {
  require(which_psi == 1 || which_psi == 2, Errc::invalid_argument, "which_psi in {1,2}");
  require(column == 1 || column == 2, Errc::invalid_argument, "column in {1,2}");
  require(std::abs(k) >= 1e-12, Errc::singular_at_origin, "Jost columns singular at k = 0");
  check_gauge(profile, k, opt);
  check_column_analytic(k, which_psi, column);

  double start = (which_psi == 1) ? -profile.support : profile.support;
  CVec<2> y = start_column(profile, k, which_psi, column);
  // On the incoming side of the support the column equals its normalizer.
  if ((which_psi == 1 && x <= -profile.support) || (which_psi == 2 && x >= profile.support)) {
    return {y[0], y[1]};
  }
  OdeOptions ode{opt.rtol, opt.atol};
  march(profile, k, column, y, start, x, ode);
  return {y[0], y[1]};
}

JostGrid jost_solutions(const StepProfile& profile, Complex k, const std::vector<double>& xs,
                        double t, const JostOptions& opt) {
  require(t == 0.0, Errc::invalid_argument, "Jost solutions are computed from t = 0 data");
  require(k.imag() == 0.0, Errc::non_analytic_column_request,
          "full Jost matrices exist on the real axis only; use jost_column off it");
  require(std::is_sorted(xs.begin(), xs.end()), Errc::invalid_argument, "x grid must ascend");
  require(!xs.empty(), Errc::invalid_argument, "empty x grid");
  require(std::abs(k) >= 1e-12, Errc::singular_at_origin, "Jost solutions singular at k = 0");
  check_gauge(profile, k, opt);

  JostGrid out;
  out.x = xs;
  out.psi1.resize(xs.size());
  out.psi2.resize(xs.size());
  OdeOptions ode{opt.rtol, opt.atol};

  for (int column = 1; column <= 2; ++column) {
    if (k.imag() != 0.0) check_column_analytic(k, 1, column);
    CVec<2> y = start_column(profile, k, 1, column);
    double pos = -profile.support;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] > pos) {
        march(profile, k, column, y, pos, xs[i], ode);
        pos = xs[i];
      }
      auto& m = out.psi1[i];
      (column == 1 ? m.m00 : m.m01) = y[0];
      (column == 1 ? m.m10 : m.m11) = y[1];
    }
  }
  for (int column = 1; column <= 2; ++column) {
    if (k.imag() != 0.0) check_column_analytic(k, 2, column);
    CVec<2> y = start_column(profile, k, 2, column);
    double pos = profile.support;
    for (size_t i = xs.size(); i-- > 0;) {
      if (xs[i] < pos) {
        march(profile, k, column, y, pos, xs[i], ode);
        pos = xs[i];
      }
      auto& m = out.psi2[i];
      (column == 1 ? m.m00 : m.m01) = y[0];
      (column == 1 ? m.m10 : m.m11) = y[1];
    }
  }
  return out;
}

namespace {

Complex wronskian(const std::array<Complex, 2>& u, const std::array<Complex, 2>& v) {
  return u[0] * v[1] - u[1] * v[0];
}

}  // namespace

ScatteringSample scattering_matrix(const StepProfile& profile, double k, const JostOptions& opt) {
  require(std::abs(k) >= opt.k_min, Errc::too_close_to_origin,
          "scattering matrix requested below the k_min guard");
  auto p1c1 = jost_column(profile, k, 1, 1, 0.0, opt);
  auto p1c2 = jost_column(profile, k, 1, 2, 0.0, opt);
  auto p2c1 = jost_column(profile, k, 2, 1, 0.0, opt);
  auto p2c2 = jost_column(profile, k, 2, 2, 0.0, opt);

  ScatteringSample s;
  s.k = k;
  s.a1 = wronskian(p1c1, p2c2);
  s.a2 = wronskian(p2c1, p1c2);
  s.b = wronskian(p2c1, p1c1);
  s.S = {s.a1, -double(profile.sigma) * s.b, s.b, s.a2};
  return s;
}

ReflectionSample reflection_coefficients(const ScatteringSample& s) {
  require(std::abs(s.a1) > 1e-12 && std::abs(s.a2) > 1e-12, Errc::spectral_zero_on_real_axis,
          "a1 or a2 vanishes on the real axis");
  return {s.k, s.b / s.a1, s.b / s.a2};
}

double IdentityReport::max_violation() const {
  return std::max({det_s, b_symmetry, a1_symmetry, a2_symmetry, unit_relation});
}

IdentityReport verify_scattering_identities(const std::vector<ScatteringSample>& samples,
                                            int sigma) {
  IdentityReport rep;
  double k_max = 0.0;
  for (const auto& s : samples) k_max = std::max(k_max, std::abs(s.k));
  // pair up k and -k
  for (const auto& s : samples) {
    const ScatteringSample* mirror = nullptr;
    for (const auto& m : samples) {
      if (std::abs(m.k + s.k) < 1e-12 * std::max(1.0, std::abs(s.k))) {
        mirror = &m;
        break;
      }
    }
    require(mirror != nullptr, Errc::asymmetric_grid, "sample grid not symmetric under k -> -k");
    rep.det_s = std::max(rep.det_s, std::abs(s.S.det() - 1.0));
    rep.b_symmetry = std::max(rep.b_symmetry, std::abs(s.b - std::conj(mirror->b)));
    rep.a1_symmetry = std::max(rep.a1_symmetry, std::abs(s.a1 - std::conj(mirror->a1)));
    rep.a2_symmetry = std::max(rep.a2_symmetry, std::abs(s.a2 - std::conj(mirror->a2)));
    rep.unit_relation = std::max(
        rep.unit_relation, std::abs(s.a1 * s.a2 + double(sigma) * s.b * s.b - 1.0));
    if (std::abs(s.k) > 0.8 * k_max) {
      rep.large_k_a = std::max({rep.large_k_a, std::abs(s.a1 - 1.0), std::abs(s.a2 - 1.0)});
      rep.large_k_b = std::max(rep.large_k_b, std::abs(s.k * s.b) / k_max);
    }
  }
  return rep;
}

Complex PureStepSpectral::b(double k) const {
  return double(sigma_) * A_ / (2.0 * kImag * k);
}

Complex PureStepSpectral::a1_upper(Complex k) const {
  return 1.0 + double(sigma_) * A_ * A_ / (4.0 * k * k);
}

std::array<Complex, 2> PureStepSpectral::psi1_first_column(Complex k) const {
  return {1.0, double(sigma_) * A_ / (2.0 * kImag * k)};
}

std::array<Complex, 2> PureStepSpectral::psi2_second_column(Complex k) const {
  return {A_ / (2.0 * kImag * k), 1.0};
}

std::array<Complex, 2> SpectralFunctions::psi1_first_column(Complex) const {
  fail(Errc::invalid_argument, "Jost columns unavailable for this spectral source");
}
std::array<Complex, 2> SpectralFunctions::psi2_second_column(Complex) const {
  fail(Errc::invalid_argument, "Jost columns unavailable for this spectral source");
}

Complex SpectralFunctions::r1(double k) const {
  Complex a = a1(k);
  require(std::abs(a) > 1e-12, Errc::spectral_zero_on_real_axis, "a1 ~ 0 on the real axis");
  return b(k) / a;
}

Complex SpectralFunctions::r2(double k) const {
  Complex a = a2(k);
  require(std::abs(a) > 1e-12, Errc::spectral_zero_on_real_axis, "a2 ~ 0 on the real axis");
  return b(k) / a;
}

Complex SpectralFunctions::r1r2(double k) const {
  if (reflectionless()) return 0.0;
  Complex bb = b(k);
  return bb * bb / (a1(k) * a2(k));
}

OdeSpectral::OdeSpectral(StepProfile profile, JostOptions opt)
    : profile_(std::move(profile)), opt_(opt) {}

ScatteringSample OdeSpectral::sample(double k) const { return scattering_matrix(profile_, k, opt_); }

Complex OdeSpectral::a1(double k) const {
  auto c1 = jost_column(profile_, k, 1, 1, 0.0, opt_);
  auto c2 = jost_column(profile_, k, 2, 2, 0.0, opt_);
  return wronskian(c1, c2);
}
Complex OdeSpectral::a2(double k) const {
  auto c1 = jost_column(profile_, k, 2, 1, 0.0, opt_);
  auto c2 = jost_column(profile_, k, 1, 2, 0.0, opt_);
  return wronskian(c1, c2);
}
Complex OdeSpectral::b(double k) const {
  auto c1 = jost_column(profile_, k, 2, 1, 0.0, opt_);
  auto c2 = jost_column(profile_, k, 1, 1, 0.0, opt_);
  return wronskian(c1, c2);
}
Complex OdeSpectral::r1r2(double k) const {
  ScatteringSample s = sample(k);
  return s.b * s.b / (s.a1 * s.a2);
}

Complex OdeSpectral::a1_upper(Complex k) const {
  require(k.imag() >= 0.0, Errc::invalid_argument, "a1 continues to the upper half-plane only");
  auto c1 = jost_column(profile_, k, 1, 1, 0.0, opt_);
  auto c2 = jost_column(profile_, k, 2, 2, 0.0, opt_);
  return wronskian(c1, c2);
}

std::array<Complex, 2> OdeSpectral::psi1_first_column(Complex k) const {
  return jost_column(profile_, k, 1, 1, 0.0, opt_);
}

std::array<Complex, 2> OdeSpectral::psi2_second_column(Complex k) const {
  return jost_column(profile_, k, 2, 2, 0.0, opt_);
}

}  // namespace nmkdv
