#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "asymptotics.hpp"
#include "doctest.h"
#include "soliton.hpp"

using namespace nmkdv;

TEST_CASE("phase and saddle points") {
  CHECK(phase_saddles(-1.0).first == Complex(1.0, 0.0));
  CHECK(phase_saddles(1.0).first == Complex(0.0, 1.0));
  for (double xi : {-0.3, -1.7, -9.0}) {
    double k0 = std::sqrt(-xi);
    // theta'(+-k0) = 0 by finite differences
    double h = 1e-6;
    Complex d = (phase_theta(k0 + h, xi) - phase_theta(k0 - h, xi)) / (2.0 * h);
    CHECK(std::abs(d) < 1e-4);
  }
  CHECK(std::abs(phase_theta(Complex(2.0, 0.0), -1.0) - Complex(8.0, 0.0)) < 1e-12);
}

TEST_CASE("sector classification") {
  CHECK(classify_sector(12.0, 1.0, 2.0) == Sector::R_I_L);  // xi = 1 < 4/3
  CHECK(classify_sector(-6.0, 2.0, 1.0) == Sector::R_II);
  CHECK(classify_sector(24.0, -1.0, 1.0) == Sector::R_IV);
  CHECK(classify_sector(-24.0, -1.0, 1.0) == Sector::R_III_L);  // xi = 2 > 1
  CHECK(classify_sector(-6.0, -1.0, 1.0) == Sector::R_III_M);   // xi = 1/2
  CHECK(classify_sector(-2.0, -1.0, 1.0) == Sector::R_III_R);   // xi = 1/6
  CHECK(classify_sector(4.0, 1.0, 1.0) == Sector::Boundary);    // xi = 1/3 exactly
  CHECK(classify_sector(0.0, 1.0, 1.0) == Sector::Boundary);
  CHECK_THROWS_AS(classify_sector(1.0, 0.0, 1.0), Error);
}

TEST_CASE("asym params: reflectionless degenerates, pure step pins beta gamma") {
  auto fixture = soliton_spectral_fixture(2.0, -1);
  DeltaCache triv = DeltaCache::build(fixture, -1.0);
  ZmParams zp = asym_params(fixture, triv, 2.0, {});
  CHECK(zp.degenerate);
  CHECK(zp.beta == Complex(0.0));
  CHECK(zp.gamma == Complex(0.0));
  CHECK(zp.nu == Complex(0.0));
  CHECK(zp.alpha == 0.75);  // lambda = 1/2 default
  CHECK(std::abs(zp.phi0 - Complex(0.0, 16.0)) < 1e-12);  // k0 = 1
  CHECK(zp.epsilon == 0.5);  // min(k0/2, |i kappa + k0|/2) with kappa = 1

  auto data = build_spectral_data(std::make_shared<PureStepSpectral>(2.0));
  DeltaCache cache = DeltaCache::build(data, -1.0);
  ZmParams p = asym_params(data, cache, -3.0, {});
  CHECK(std::abs(p.beta * p.gamma - p.nu) < 1e-9);
  CHECK(std::abs(p.q1 * p.q2 - data.functions->r1r2(-1.0)) < 1e-10);
  CHECK(p.tau == 36.0);  // -12 t k0^3 at t = -3

  CHECK_THROWS_AS(asym_params(data, cache, 1.0, 0.4), Error);   // alpha <= lambda
  CHECK_THROWS_AS(asym_params(data, cache, 1.0, 1.01), Error);  // alpha >= 1
}

TEST_CASE("R_II evaluation") {
  auto fixture = soliton_spectral_fixture(2.0, -1);
  DeltaCache triv = DeltaCache::build(fixture, -1.0);
  auto r = evaluate_RII(fixture, triv, -12.0, 1.0);
  CHECK(r.u_total == 0.0);

  auto data = build_spectral_data(std::make_shared<PureStepSpectral>(2.0));
  DeltaCache cache = DeltaCache::build(data, -1.0);
  auto r2 = evaluate_RII(data, cache, -12.0, 1.0);
  // |u_sub| <= envelope 4 eta (-tau)^{-1/2} |gamma|, and the pieces recompose
  ZmParams p = asym_params(data, cache, 1.0, {});
  double envelope = 4.0 * p.eta * std::pow(12.0, -0.5) * std::abs(p.gamma);
  CHECK(std::abs(r2.u_subleading) <= envelope * (1.0 + 1e-12));
  double phase = 16.0 + p.nu.real() * std::log(12.0);
  double recomputed = -4.0 * p.eta * std::pow(12.0, -0.5) *
                      (p.gamma * std::exp(kImag * phase)).real();
  CHECK(std::abs(r2.u_subleading - recomputed) < 1e-12);
  CHECK(r2.u_leading == 0.0);
  CHECK(r2.error_exponent == -(1.0 + p.alpha) / 2.0);  // Im nu = 0 branch

  CHECK_THROWS_AS(evaluate_RII(data, cache, 12.0, 1.0, {}), Error);
}

TEST_CASE("R_IV evaluation") {
  auto fixture = soliton_spectral_fixture(2.0, -1);
  DeltaCache triv = DeltaCache::build(fixture, -1.0);
  auto r = evaluate_RIV(fixture, triv, 12.0, -1.0);
  CHECK(r.u_total == 2.0);  // delta = 1, beta = gamma = 0

  auto data = build_spectral_data(std::make_shared<PureStepSpectral>(2.0));
  DeltaCache cache = DeltaCache::build(data, -1.0);
  auto r2 = evaluate_RIV(data, cache, 12.0, -1.0);
  CHECK(std::abs(r2.u_leading - 2.0) < 1e-9);  // delta0 = 1 for the pure step
  CHECK(r2.u_subleading != 0.0);               // branch II.b carries both terms
  ZmParams p = asym_params(data, cache, -1.0, {});
  double tau = 12.0;
  double c0sq = -0.25 * 4.0;  // (A delta0^2 / 2i)^2 with A = 2
  double phase_a = -16.0 + p.nu.real() * std::log(tau);
  double term_a = -4.0 * c0sq / 1.0 * p.eta * std::pow(tau, -0.5) *
                  (kImag * p.gamma * std::exp(kImag * phase_a)).real();
  double phase_b = 16.0 - p.nu.real() * std::log(tau);
  double term_b = 4.0 * p.eta * std::pow(tau, -0.5) *
                  (p.beta * std::exp(kImag * phase_b)).real();
  CHECK(std::abs(r2.u_subleading - (term_a + term_b)) < 1e-12);

  CHECK_THROWS_AS(evaluate_RIV(data, cache, -12.0, 1.0, {}), Error);
}

TEST_CASE("R_I evaluation on the fixture") {
  auto fixture = soliton_spectral_fixture(2.0, -1);
  // C1 = A gamma0 / (2 i a1'(i kappa) kappa^2) = gamma0
  auto r = evaluate_RI(fixture, 2.0, 1.0);
  CHECK(r.sector == Sector::R_I_L);
  CHECK(std::abs(r.C1 - Complex(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(r.u_total - 2.0 / (1.0 + std::exp(4.0))) < 1e-15);

  auto rm = evaluate_RI(fixture, 6.0, 1.0);  // xi = 1/2 in (1/3, 1)
  CHECK(rm.sector == Sector::R_I_M);
  CHECK(rm.u_total == 2.0);

  auto rr = evaluate_RI(fixture, 24.0, 1.0);  // xi = 2 > 1
  CHECK(rr.sector == Sector::R_I_R);
  CHECK(rr.u_total == 2.0);
  CHECK(rr.kappa_delta == 0.5);
  CHECK(rr.error_exponent == -8.0 * 0.5 * (3.0 * 2.0 - 0.25));

  // exactness against the soliton across the solitonic sector
  SolitonParams sp{2.0, -1};
  for (double t : {0.5, 2.0, 7.0}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      double x = 12.0 * t * frac / 3.0;
      CHECK(std::abs(evaluate_RI(fixture, x, t).u_total - one_soliton(sp, x, t)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(evaluate_RI(fixture, -2.0, -1.0, {}), Error);
  CHECK_THROWS_AS(evaluate_RI(fixture, 2.0, 1.0, AsymOptions{{}, 3.0}), Error);  // kd > kappa
}

TEST_CASE("R_III evaluation and the mirror identity") {
  auto fixture = soliton_spectral_fixture(2.0, -1);
  auto r = evaluate_RIII(fixture, -2.0, -1.0);
  CHECK(r.sector == Sector::R_III_R);
  CHECK(std::abs(r.C2 - Complex(-2.0, 0.0)) < 1e-14);
  CHECK(std::abs(r.u_total - 4.0 / (-2.0 * std::exp(4.0) - 2.0)) < 1e-15);
  // = - one_soliton(-x, -t)
  SolitonParams sp{2.0, -1};
  CHECK(std::abs(r.u_total + one_soliton(sp, 2.0, 1.0)) < 1e-15);

  // the mirror of evaluate_RI across the whole solitonic sector
  for (double t : {0.5, 2.0, 7.0}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      double x = 12.0 * t * frac / 3.0;
      auto r3 = evaluate_RIII(fixture, -x, -t);
      auto r1 = evaluate_RI(fixture, x, t);
      CHECK(std::abs(r3.u_total + r1.u_total) < 1e-12);
    }
  }

  auto rm = evaluate_RIII(fixture, -6.0, -1.0);
  CHECK(rm.sector == Sector::R_III_M);
  CHECK(rm.u_total == 0.0);
  CHECK(rm.error_exponent == 16.0 * std::pow(0.5, 1.5));

  auto rl = evaluate_RIII(fixture, -24.0, -1.0);
  CHECK(rl.sector == Sector::R_III_L);
  CHECK(rl.u_total == 0.0);
}

TEST_CASE("dispatcher covers every sector and boundaries return no value") {
  auto fixture = soliton_spectral_fixture(2.0, -1);
  DeltaCache cache = DeltaCache::build(fixture, -0.25);
  auto b = evaluate_asym(fixture, nullptr, 4.0, 1.0);  // xi = 1/3 boundary
  CHECK(b.sector == Sector::Boundary);
  CHECK(std::isnan(b.u_total));
  auto r2 = evaluate_asym(fixture, &cache, -3.0, 1.0);
  CHECK(r2.sector == Sector::R_II);
  CHECK_THROWS_AS(evaluate_asym(fixture, nullptr, -3.0, 1.0), Error);  // missing cache
}

TEST_CASE("parametrix model") {
  // q1 = q2 = 0, nu = 0: identity model
  ParametrixModel triv(0.0, 0.0, 0.0);
  CHECK(triv.jump_residual(1.0) < 1e-14);
  Mat2 mpc = triv.m_pc(Complex(0.0, 3.0), +1);
  CHECK((mpc - Mat2::identity()).max_abs() < 1e-12);

  for (double nu : {0.05, 0.11, 0.3}) {
    double q = std::sqrt(1.0 - std::exp(-2.0 * kPi * nu));
    ParametrixModel model(nu, Complex(0.0, q), Complex(0.0, q));
    for (double z : {0.5, 1.0, 2.0}) {
      CHECK(model.jump_residual(z) < 1e-7);
      CHECK(model.jump_residual(-z) < 1e-7);
      CHECK(std::abs(model.reconstruct_q1(z) - Complex(0.0, q)) < 1e-6);
    }
    CHECK(std::abs(model.beta() * model.gamma() - nu) < 1e-7);
    auto rec = model.recover_from_expansion();
    CHECK(std::abs(rec.beta - model.beta()) < 1e-7);
    CHECK(std::abs(rec.gamma - model.gamma()) < 1e-7);
  }

  CHECK_THROWS_AS(ParametrixModel(0.1, Complex(0.0, 1.0), Complex(0.0, 1.0)), Error);
}

TEST_CASE("subleading slope helper hits -1/2 on pure-step data") {
  auto data = build_spectral_data(std::make_shared<PureStepSpectral>(2.0));
  DeltaCache cache = DeltaCache::build(data, -1.0);
  CHECK(std::abs(subleading_slope(data, cache, false) + 0.5) < 0.02);
}

TEST_CASE("oscillatory sectors on perturbed-step data (complex nu)") {
  auto data = build_spectral_data(
      std::make_shared<OdeSpectral>(StepProfile::bump_step(1.0, 0.2, 0.5, 0.5)));
  DeltaCache cache = DeltaCache::build(data, -1.0);
  CHECK(cache.nu().imag() != 0.0);

  auto r4 = evaluate_RIV(data, cache, 12.0, -1.0);
  double d0 = cache.delta_at_0().real();
  CHECK(r4.u_leading == data.A * d0 * d0);
  CHECK(std::isfinite(r4.u_subleading));
  CHECK(r4.u_subleading != 0.0);
  // Im nu != 0 shifts the reported order by 2 |Im nu|
  CHECK(r4.error_exponent ==
        -(1.0 + r4.alpha) / 2.0 + 2.0 * std::abs(cache.nu().imag()));

  auto r2 = evaluate_RII(data, cache, -12.0, 1.0);
  CHECK(r2.u_leading == 0.0);
  CHECK(std::isfinite(r2.u_subleading));
}
