#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "scattering.hpp"

using namespace nmkdv;

TEST_CASE("background normalizers") {
  // A = 2, k = i: off-diagonal of N_+ is A/(2ik) = -1
  Mat2 np = background_normalizer(2.0, 1, Complex(0.0, 1.0), +1);
  CHECK(std::abs(np.m01 - Complex(-1.0, 0.0)) < 1e-15);
  CHECK(np.m10 == Complex(0.0));

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    Complex k(u(rng), u(rng));
    if (std::abs(k) < 0.1) continue;
    CHECK(std::abs(background_normalizer(1.5, 1, k, -1).det() - 1.0) < 1e-14);
  }
  CHECK_THROWS_AS(background_normalizer(1.0, 1, Complex(0.0, 0.0), +1), Error);
}

TEST_CASE("background solution carries the plane-wave phases") {
  double A = 1.0, x = 0.7, t = 0.3;
  Complex k(0.4, 0.0);
  Mat2 phi = background_solution(A, 1, k, x, t, +1);
  Complex phase = std::exp(-(kImag * k * x + 4.0 * kImag * k * k * k * t));
  CHECK(std::abs(phi.m00 - phase) < 1e-14);
  CHECK(std::abs(phi.m11 - 1.0 / phase) < 1e-14);
}

TEST_CASE("jost solutions: zero potential is the identity") {
  StepProfile p = StepProfile::pure_step(0.0);
  auto grid = jost_solutions(p, Complex(0.7, 0.0), {-2.0, 0.0, 1.5});
  for (const auto& m : grid.psi1) {
    CHECK((m - Mat2::identity()).max_abs() < 1e-12);
  }
  for (const auto& m : grid.psi2) {
    CHECK((m - Mat2::identity()).max_abs() < 1e-12);
  }
}

TEST_CASE("jost solutions: pure step left of the jump is exactly N-") {
  StepProfile p = StepProfile::pure_step(1.5);
  Complex k(0.9, 0.0);
  auto c1 = jost_column(p, k, 1, 1, -0.25);
  Mat2 nm = background_normalizer(1.5, 1, k, -1);
  CHECK(std::abs(c1[0] - nm.m00) < 1e-12);
  CHECK(std::abs(c1[1] - nm.m10) < 1e-12);
}

TEST_CASE("jost solutions have unit determinant for real k") {
  StepProfile p = StepProfile::bump_step(1.0, 0.2, 0.5, 0.5);
  auto grid = jost_solutions(p, Complex(5.0, 0.0), {-2.0, -0.7, 0.0, 1.1, 2.0});
  for (size_t i = 0; i < grid.x.size(); ++i) {
    CHECK(std::abs(grid.psi1[i].det() - 1.0) < 1e-9);
    CHECK(std::abs(grid.psi2[i].det() - 1.0) < 1e-9);
  }
}

TEST_CASE("jost error paths") {
  StepProfile p = StepProfile::pure_step(1.0);
  CHECK_THROWS_AS(jost_column(p, Complex(0.0, 1.0), 1, 2, 0.0), Error);  // non-analytic
  CHECK_THROWS_AS(jost_column(p, Complex(0.0, 60.0), 1, 1, 0.0), Error);  // gauge window
  CHECK_THROWS_AS(jost_column(p, Complex(0.0, 0.0), 1, 1, 0.0), Error);   // k = 0
  CHECK_THROWS_AS(jost_solutions(p, Complex(1.0, 0.0), {0.0}, 0.5), Error);  // t != 0
}

TEST_CASE("scattering matrix of the pure step matches the closed form") {
  // A = 2, k = 1: S = ((2, i), (-i, 1))
  StepProfile p = StepProfile::pure_step(2.0);
  auto s = scattering_matrix(p, 1.0);
  CHECK(std::abs(s.S.m00 - 2.0) < 1e-9);
  CHECK(std::abs(s.S.m01 - kImag) < 1e-9);
  CHECK(std::abs(s.S.m10 + kImag) < 1e-9);
  CHECK(std::abs(s.S.m11 - 1.0) < 1e-9);

  PureStepSpectral closed(2.0);
  for (double k : {0.05, 0.31, 1.7, 5.0, 19.0, -0.4, -11.0}) {
    auto num = scattering_matrix(p, k);
    CHECK(std::abs(num.a1 - closed.a1(k)) < 1e-8 * std::abs(closed.a1(k)));
    CHECK(std::abs(num.a2 - closed.a2(k)) < 1e-8);
    CHECK(std::abs(num.b - closed.b(k)) < 1e-8 * std::abs(closed.b(k)));
  }
}

TEST_CASE("scattering matrix guards") {
  StepProfile p = StepProfile::pure_step(1.0);
  CHECK_THROWS_AS(scattering_matrix(p, 1e-5), Error);
}

TEST_CASE("zero background scatters to the identity") {
  StepProfile p = StepProfile::pure_step(0.0);
  auto s = scattering_matrix(p, 0.8);
  CHECK((s.S - Mat2::identity()).max_abs() < 1e-12);
}

TEST_CASE("reflection coefficients") {
  StepProfile p = StepProfile::pure_step(2.0);
  auto r = reflection_coefficients(scattering_matrix(p, 1.0));
  CHECK(std::abs(r.r1 - Complex(0.0, -0.5)) < 1e-10);
  CHECK(std::abs(r.r2 - Complex(0.0, -1.0)) < 1e-10);

  // reflectionless data
  ScatteringSample s;
  s.k = 1.0;
  s.a1 = Complex(0.5, 0.0);
  s.a2 = Complex(2.0, 0.0);
  s.b = 0.0;
  s.S = {s.a1, 0.0, 0.0, s.a2};
  auto rr = reflection_coefficients(s);
  CHECK(rr.r1 == Complex(0.0));
  CHECK(rr.r2 == Complex(0.0));
}

TEST_CASE("1 + r1 r2 = 1/(a1 a2) on a grid") {
  StepProfile p = StepProfile::bump_step(1.0, 0.2, 0.5, 0.5);
  for (int i = 0; i < 50; ++i) {
    double k = 0.2 + 0.25 * double(i);
    auto s = scattering_matrix(p, k);
    auto r = reflection_coefficients(s);
    CHECK(std::abs(1.0 + r.r1 * r.r2 - 1.0 / (s.a1 * s.a2)) < 1e-9);
  }
}

TEST_CASE("identity report on pure-step samples") {
  StepProfile p = StepProfile::pure_step(1.0);
  std::vector<ScatteringSample> samples;
  for (int i = 0; i < 16; ++i) {
    double k = 0.1 * std::pow(200.0, double(i) / 15.0);
    samples.push_back(scattering_matrix(p, k));
    samples.push_back(scattering_matrix(p, -k));
  }
  auto rep = verify_scattering_identities(samples, 1);
  CHECK(rep.max_violation() < 1e-8);
  CHECK(rep.large_k_a < 1e-2);  // a_j -> 1 like 1/k^2 near k_max = 20

  samples.pop_back();  // break the symmetry
  CHECK_THROWS_AS(verify_scattering_identities(samples, 1), Error);
}

TEST_CASE("b symmetry property across the grid") {
  StepProfile p = StepProfile::smooth_step(1.0, 0.5);
  for (double k : {0.3, 0.9, 2.2, 7.0}) {
    Complex b_pos = scattering_matrix(p, k).b;
    Complex b_neg = scattering_matrix(p, -k).b;
    CHECK(std::abs(b_pos - std::conj(b_neg)) < 1e-8);
  }
}

TEST_CASE("profile presets keep the compact-perturbation contract") {
  StepProfile smooth = StepProfile::smooth_step(2.0, 0.5);
  CHECK(smooth.perturbation(smooth.support + 0.1) == 0.0);
  CHECK(smooth.perturbation(-smooth.support - 0.1) == 0.0);
  CHECK(smooth.u0(10.0) == 2.0);
  CHECK(smooth.u0(-10.0) == 0.0);
  // interior matches the tanh shape
  CHECK(std::abs(smooth.u0(0.25) - (1.0 + std::tanh(0.5))) < 1e-12);

  StepProfile bump = StepProfile::bump_step(1.0, 0.2, 0.5, 0.5);
  CHECK(std::abs(bump.u0(0.5) - 1.2) < 1e-12);
  CHECK(bump.u0(3.0) == 1.0);
}

TEST_CASE("normalizers approach the identity for large |k|") {
  Mat2 n = background_normalizer(2.0, 1, Complex(1e6, 0.0), +1);
  CHECK((n - Mat2::identity()).max_abs() < 1e-5);
}

TEST_CASE("reflection guard fires when a1 vanishes on the axis") {
  ScatteringSample s;
  s.k = 0.5;
  s.a1 = Complex(1e-14, 0.0);
  s.a2 = 1.0;
  s.b = Complex(0.0, 1.0);
  s.S = {s.a1, -s.b, s.b, s.a2};
  CHECK_THROWS_AS(reflection_coefficients(s), Error);
}

TEST_CASE("reflectionless synthetic samples have exact b symmetry") {
  std::vector<ScatteringSample> samples;
  for (double k : {0.5, 1.0, -0.5, -1.0}) {
    ScatteringSample s;
    s.k = k;
    s.a1 = (Complex(k, 0.0) - Complex(0.0, 1.0)) / k;
    s.a2 = k / (Complex(k, 0.0) - Complex(0.0, 1.0));
    s.b = 0.0;
    s.S = {s.a1, 0.0, 0.0, s.a2};
    samples.push_back(s);
  }
  CHECK(verify_scattering_identities(samples, 1).b_symmetry == 0.0);
}

TEST_CASE("file-backed profiles scatter like their analytic source") {
  StepProfile analytic = StepProfile::bump_step(1.0, 0.2, 0.5, 0.5);
  analytic.write_csv("bump_samples.csv");
  StepProfile sampled = StepProfile::from_csv("bump_samples.csv");
  CHECK(!sampled.analytic);  // interpolation path
  for (double k : {0.3, 1.0, 4.0}) {
    auto a = scattering_matrix(analytic, k);
    auto b = scattering_matrix(sampled, k);
    CHECK((a.S - b.S).max_abs() < 1e-8);
  }
  std::remove("bump_samples.csv");
}
