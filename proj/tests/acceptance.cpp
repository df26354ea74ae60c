// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Always compiled with the checks on.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "specfun.hpp"
#include "soliton.hpp"
#include "validate.hpp"
#include "validation.hpp"

using namespace nmkdv;

namespace {

int g_failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %-28s %s\n", pass ? "PASS" : "FAIL", criterion, name,
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion_1_pure_step_scattering() {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double A : {0.5, 1.0, 2.0, 4.0}) {
    StepProfile profile = StepProfile::pure_step(A);
    PureStepSpectral closed(A);
    for (int i = 0; i < 200; ++i) {
      double k = 0.05 * std::pow(20.0 / 0.05, double(i) / 199.0);
      Mat2 numeric = scattering_matrix(profile, k).S;
      Mat2 reference = {closed.a1(k), -closed.b(k), closed.b(k), closed.a2(k)};
      worst = std::max(worst, (numeric - reference).max_abs() / reference.max_abs());
    }
  }
  double secs = seconds_since(t0);
  report(1, "pure-step scattering", worst <= 1e-8 && secs <= 30.0,
         fmt("max rel err %.3e (tol 1e-8), %.1f s (limit 30 s)", worst, secs));
}

void criterion_2_algebraic_identities() {
  auto run = [&](const StepProfile& profile) {
    std::vector<ScatteringSample> samples;
    for (int i = 0; i < 100; ++i) {
      double k = 0.05 * std::pow(20.0 / 0.05, double(i) / 99.0);
      samples.push_back(scattering_matrix(profile, k));
      samples.push_back(scattering_matrix(profile, -k));
    }
    auto rep = verify_scattering_identities(samples, profile.sigma);
    return std::max({rep.det_s, rep.unit_relation, rep.b_symmetry});
  };
  double pure = run(StepProfile::pure_step(2.0));
  double bump = run(StepProfile::bump_step(1.0, 0.2, 0.5, 0.5));
  report(2, "algebraic identities", pure <= 1e-8 && bump <= 1e-6,
         fmt("pure %.3e (tol 1e-8), bump %.3e (tol 1e-6)", pure, bump));
}

void criterion_3_kappa_cross_oracle() {
  GridOptions gopt;
  double pure_gap = 0.0;
  for (double A : {1.0, 2.0}) {
    auto f = std::make_shared<OdeSpectral>(StepProfile::pure_step(A));
    double root = find_kappa_root(*f, gopt).kappa;
    double formula = kappa_by_formula(*f, CaseTag::I).kappa;
    pure_gap = std::max({pure_gap, std::abs(root - 0.5 * A) / (0.5 * A),
                         std::abs(formula - 0.5 * A) / (0.5 * A)});
  }
  double preset_gap = 0.0;
  for (int which = 0; which < 2; ++which) {
    StepProfile p = which == 0 ? StepProfile::smooth_step(1.0, 0.5)
                               : StepProfile::bump_step(1.0, 0.2, 0.5, 0.5);
    auto f = std::make_shared<OdeSpectral>(p);
    double root = find_kappa_root(*f, gopt).kappa;
    double formula = kappa_by_formula(*f, CaseTag::I).kappa;
    preset_gap = std::max(preset_gap, std::abs(root - formula) / root);
  }
  auto fixture = soliton_spectral_fixture(2.0, -1);
  double fixture_gap = std::abs(kappa_by_formula(*fixture.functions, CaseTag::II).kappa - 1.0);
  bool pass = pure_gap <= 1e-8 && preset_gap <= 1e-5 && fixture_gap == 0.0;
  report(3, "kappa cross-oracle", pass,
         fmt("pure %.2e (1e-8), presets %.2e (1e-5), fixture %.1e (exact)", pure_gap, preset_gap,
             fixture_gap));
}

void criterion_4_delta_scalar_rhp() {
  auto data = build_spectral_data(std::make_shared<PureStepSpectral>(1.0));
  DeltaCache cache = DeltaCache::build(data, -1.0);
  double jump = 0.0;
  for (int i = 0; i < 10; ++i) {
    double k = 1.05 + 1.3 * double(i);
    for (double sgn : {1.0, -1.0}) {
      Complex ratio = cache.delta_boundary(sgn * k, +1) / cache.delta_boundary(sgn * k, -1);
      jump = std::max(jump, std::abs(ratio - data.functions->one_plus_r1r2(sgn * k)));
    }
  }
  double at_inf = std::abs(cache.delta(Complex(0.0, 1e3)) - 1.0);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.1, 3.0);
  double sym = 0.0;
  for (int i = 0; i < 20; ++i) {
    Complex k(re(rng), im(rng));
    sym = std::max(sym, std::abs(cache.delta(k) - std::conj(cache.delta(-std::conj(k)))));
  }
  auto fixture = soliton_spectral_fixture(2.0, -1);
  DeltaCache triv = DeltaCache::build(fixture, -1.0);
  double refl = std::abs(triv.delta(Complex(0.7, 0.3)) - 1.0);
  bool pass = jump <= 1e-6 && at_inf <= 1e-4 && sym <= 1e-8 && refl <= 1e-12;
  report(4, "delta scalar RHP", pass,
         fmt("jump %.2e, |delta(1e3)-1| %.2e, sym %.2e", jump, at_inf, sym) +
             fmt(", reflectionless %.1e", refl));
}

void criterion_5_nu_value() {
  auto data = build_spectral_data(std::make_shared<PureStepSpectral>(2.0));
  DeltaCache cache = DeltaCache::build(data, -1.0);
  // closed form from 1 + r1 r2 = 1/(a1 a2) at -k0: nu = log(1 + A^2/(4 k0^2))/(2 pi)
  double nu_ref = std::log(2.0) / (2.0 * kPi);
  double gap = std::abs(cache.nu().real() - nu_ref);
  double imag = std::abs(cache.nu().imag());
  report(5, "nu closed form", gap <= 1e-8 && imag <= 1e-10,
         fmt("|nu - log2/2pi| = %.2e (1e-8), |Im nu| = %.1e (1e-10)", gap, imag));
}

void criterion_6_soliton_residual() {
  auto t0 = std::chrono::steady_clock::now();
  SolitonParams sp{1.0, -1};
  auto sample = [&](double h) {
    return FieldGrid::sample([&](double x, double t) { return one_soliton(sp, x, t); }, 10.0, h,
                             10.0, h);
  };
  double res_fine = pde_residual(sample(0.01)).max_abs;
  double ratio = pde_residual(sample(0.04)).max_abs / pde_residual(sample(0.02)).max_abs;
  double secs = seconds_since(t0);
  bool pass = res_fine <= 1e-6 && ratio >= 12.8 && ratio <= 19.2 && secs <= 60.0;
  report(6, "one-soliton PDE residual", pass,
         fmt("max %.2e (1e-6), halving ratio %.2f (16 +- 20%%), %.1f s", res_fine, ratio, secs));
}

void criterion_7_solitonic_exactness() {
  auto fixture = soliton_spectral_fixture(2.0, -1);
  SolitonParams sp{2.0, -1};
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> tt(0.25, 10.0), frac(0.02, 0.98);
  double direct = 0.0, mirrored = 0.0;
  int n_direct = 0, n_mirror = 0;
  while (n_direct < 1000) {
    double t = tt(rng);
    double x = 12.0 * t * frac(rng) * fixture.kappa * fixture.kappa / 3.0;
    if (classify_sector(x, t, fixture.kappa) != Sector::R_I_L) continue;
    ++n_direct;
    direct = std::max(direct, std::abs(evaluate_RI(fixture, x, t).u_total - one_soliton(sp, x, t)));
  }
  while (n_mirror < 1000) {
    double t = tt(rng);
    double x = 12.0 * t * frac(rng) * fixture.kappa * fixture.kappa / 3.0;
    if (classify_sector(-x, -t, fixture.kappa) != Sector::R_III_R) continue;
    ++n_mirror;
    mirrored = std::max(mirrored, std::abs(evaluate_RIII(fixture, -x, -t).u_total +
                                           one_soliton(sp, x, t)));
  }
  report(7, "solitonic exactness", direct <= 1e-12 && mirrored <= 1e-12,
         fmt("R_I_L gap %.2e, mirrored R_III_R gap %.2e (tol 1e-12)", direct, mirrored));
}

void criterion_8_subleading_scaling() {
  auto data = build_spectral_data(std::make_shared<PureStepSpectral>(2.0));
  DeltaCache cache = DeltaCache::build(data, -1.0);
  double s2 = subleading_slope(data, cache, false);
  double s4 = subleading_slope(data, cache, true);
  bool pass = std::abs(s2 + 0.5) <= 0.02 && std::abs(s4 + 0.5) <= 0.02;
  report(8, "subleading t^(-1/2) law", pass,
         fmt("R_II slope %.4f, R_IV slope %.4f (-0.5 +- 0.02)", s2, s4));
}

void criterion_9_boundary_compatibility() {
  auto data = build_spectral_data(
      std::make_shared<OdeSpectral>(StepProfile::bump_step(1.0, 0.2, 0.5, 0.5)));
  double prev = 1e300, final_gap = 0.0;
  bool monotone = true;
  for (double xi : {-1.0, -4.0, -16.0, -64.0, -100.0}) {
    DeltaCache cache = DeltaCache::build(data, xi);
    double d0 = cache.delta_at_0().real();
    double gap = std::abs(data.A * d0 * d0 - data.A);
    if (gap > prev + 1e-12) monotone = false;
    prev = gap;
    final_gap = gap;
  }
  report(9, "R_IV leading term -> A", monotone && final_gap <= 1e-2 * data.A,
         fmt("final gap %.2e (tol 1e-2 A), ", final_gap) +
             (monotone ? "monotone" : "NOT monotone"));
}

void criterion_10_parametrix_loop() {
  double jump = 0.0, product = 0.0, wronskian_gap = 0.0;
  for (double nu : {0.05, 0.11, 0.3}) {
    double q = std::sqrt(1.0 - std::exp(-2.0 * kPi * nu));
    ParametrixModel model(nu, Complex(0.0, q), Complex(0.0, q));
    for (double z : {0.5, 1.0, 2.0}) {
      jump = std::max({jump, model.jump_residual(z), model.jump_residual(-z)});
    }
    product = std::max(product, std::abs(model.beta() * model.gamma() - nu));
    auto rec = model.recover_from_expansion();
    product = std::max({product, std::abs(rec.beta * rec.gamma - nu)});

    for (double zeta : {0.5, 1.0, 2.0}) {
      Complex a = kImag * nu;
      Complex ra = std::exp(Complex(0.0, kPi / 4.0));
      Complex rb = std::exp(Complex(0.0, -3.0 * kPi / 4.0));
      Complex wr = weber_d(a, ra * zeta) * rb * weber_d_deriv(a, rb * zeta) -
                   ra * weber_d_deriv(a, ra * zeta) * weber_d(a, rb * zeta);
      Complex expected =
          std::sqrt(2.0 * kPi) * std::exp(Complex(0.0, kPi / 4.0)) * rgamma_complex(-a);
      wronskian_gap = std::max(wronskian_gap, std::abs(wr - expected) / std::abs(expected));
    }
  }
  bool pass = jump <= 1e-7 && product <= 1e-7 && wronskian_gap <= 1e-7;
  report(10, "parametrix loop closure", pass,
         fmt("jump %.2e, beta*gamma-nu %.2e, Wronskian %.2e (tol 1e-7)", jump, product,
             wronskian_gap));
}

void criterion_11_determinism(std::chrono::steady_clock::time_point wall0) {
  auto r1 = run_validation_suite();
  auto r2 = run_validation_suite();
  auto l1 = r1.lines(), l2 = r2.lines();
  bool identical = l1 == l2;
  double secs = seconds_since(wall0);
  bool pass = identical && r1.failures == 0 && secs <= 600.0;
  report(11, "determinism + runtime", pass,
         fmt("reports identical: %.0f, suite failures: %.0f, wall %.0f s (limit 600)",
             identical ? 1.0 : 0.0, double(r1.failures), secs));
}

}  // namespace

int main() {
  auto wall0 = std::chrono::steady_clock::now();
  criterion_1_pure_step_scattering();
  criterion_2_algebraic_identities();
  criterion_3_kappa_cross_oracle();
  criterion_4_delta_scalar_rhp();
  criterion_5_nu_value();
  criterion_6_soliton_residual();
  criterion_7_solitonic_exactness();
  criterion_8_subleading_scaling();
  criterion_9_boundary_compatibility();
  criterion_10_parametrix_loop();
  criterion_11_determinism(wall0);
  std::printf("%d/11 criteria passed\n", 11 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
