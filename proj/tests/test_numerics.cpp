#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "quadrature.hpp"
#include "specfun.hpp"

using namespace nmkdv;

TEST_CASE("gamma at classical points") {
  CHECK(std::abs(gamma_complex(1.0) - 1.0) < 1e-14);
  CHECK(std::abs(gamma_complex(0.5) - std::sqrt(kPi)) < 1e-14);
  CHECK(std::abs(gamma_complex(5.0) - 24.0) < 1e-12);
}

TEST_CASE("gamma modulus identity on the imaginary axis") {
  // oracle: |Gamma(i y)|^2 * y * sinh(pi y) = pi
  double y = 0.3;
  Complex g = gamma_complex(Complex(0.0, y));
  CHECK(std::abs(std::norm(g) * y * std::sinh(kPi * y) - kPi) < 1e-10);
}

TEST_CASE("gamma recurrence over the validated box") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-18.0, 18.0);
  for (int i = 0; i < 100; ++i) {
    Complex z(u(rng), u(rng));
    if (z.real() <= 0.5 && std::abs(z.real() - std::round(z.real())) < 0.05 &&
        std::abs(z.imag()) < 0.05) {
      continue;
    }
    Complex lhs = gamma_complex(z + 1.0);
    Complex rhs = z * gamma_complex(z);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
  }
}

TEST_CASE("gamma pole detection") {
  CHECK_THROWS_AS(gamma_complex(Complex(0.0, 0.0)), Error);
  CHECK_THROWS_AS(gamma_complex(Complex(-3.0, 1e-13)), Error);
  CHECK(rgamma_complex(Complex(-3.0, 0.0)) == Complex(0.0));
}

TEST_CASE("weber closed forms") {
  CHECK(std::abs(weber_d(0.0, 2.0) - std::exp(-1.0)) < 1e-13);
  CHECK(std::abs(weber_d(1.0, 2.0) - 2.0 * std::exp(-1.0)) < 1e-13);
}

TEST_CASE("weber three-term recurrence") {
  // D_{a+1}(z) - z D_a(z) + a D_{a-1}(z) = 0
  for (Complex a : {Complex(0.0, 0.2), Complex(0.3, -0.4)}) {
    for (Complex z : {Complex(1.0, 1.0), Complex(-2.0, 0.5), Complex(9.0, 3.0),
                      Complex(-8.0, -7.0)}) {
      Complex res = weber_d(a + 1.0, z) - z * weber_d(a, z) + a * weber_d(a - 1.0, z);
      double scale = std::abs(weber_d(a, z)) * (1.0 + std::abs(z));
      CHECK(std::abs(res) <= 1e-8 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("weber equation residual via five-point second difference") {
  Complex a(0.0, 0.2);
  double h = 1e-2;
  for (Complex z : {Complex(2.0, 0.0), Complex(1.0, 1.0), Complex(-1.5, 0.7)}) {
    auto f = [&](double s) { return weber_d(a, z + s); };
    Complex d2 = (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) /
                 (12.0 * h * h);
    Complex res = d2 + (a + 0.5 - 0.25 * z * z) * weber_d(a, z);
    CHECK(std::abs(res) <= 1e-8 * std::max(1.0, std::abs(weber_d(a, z))));
  }
}

TEST_CASE("weber against frozen multiprecision references") {
  struct Ref {
    Complex a, z, v;
  };
  static const Ref refs[] = {
      {Complex(0, 0.3), Complex(-2.4968810192828541, 5.4557845609540898),
       Complex(95.202257632505052, 171.45165898193704)},
      {Complex(0, 0.3), Complex(8.1203601575676512, 2.5119217566213865),
       Complex(-3.0451456508134376e-07, 4.0025487649671461e-08)},
      {Complex(0, 0.3), Complex(-8.008889895683593, 2.8473992763251932),
       Complex(68625.497305663841, -79112.348581580169)},
      {Complex(0, 0.3), Complex(-8.008889895683593, -2.8473992763251932),
       Complex(-95413.896300612585, 87766.1935999134)},
      {Complex(0.4, -0.1), Complex(-2.7264251363170451, 11.686171570538342),
       Complex(-260295865316514.16, -216911254093810.47)},
      {Complex(1, 0.5), Complex(-17.655033517660375, -24.254892114587701),
       Complex(5.3821461719067746e+31, -8.0526275064898737e+31)},
      {Complex(-1, 0.11), Complex(-9.7095816514959044, 2.3924932921398243),
       Complex(8161810849.6102886, 6020310194.8777037)},
      {Complex(0, -0.45), Complex(34.41789842780198, 28.989795925696097),
       Complex(-2.740110144425427e-38, 5.1740507240205559e-38)},
  };
  for (const auto& r : refs) {
    CHECK(std::abs(weber_d(r.a, r.z) - r.v) <= 1e-10 * std::abs(r.v));
  }
}

TEST_CASE("weber validated range guard") {
  CHECK_THROWS_AS(weber_d(Complex(0.0, 0.1), Complex(51.0, 0.0)), Error);
}

TEST_CASE("weber wronskian identity") {
  for (double nu : {0.05, 0.11, 0.3, 0.45}) {
    for (double zeta : {0.5, 1.0, 2.0}) {
      Complex a = kImag * nu;
      Complex ra = std::exp(Complex(0.0, kPi / 4.0));
      Complex rb = std::exp(Complex(0.0, -3.0 * kPi / 4.0));
      Complex wr = weber_d(a, ra * zeta) * rb * weber_d_deriv(a, rb * zeta) -
                   ra * weber_d_deriv(a, ra * zeta) * weber_d(a, rb * zeta);
      Complex expected =
          std::sqrt(2.0 * kPi) * std::exp(Complex(0.0, kPi / 4.0)) * rgamma_complex(-a);
      CHECK(std::abs(wr - expected) <= 1e-7 * std::abs(expected));
    }
  }
}

namespace {

Complex trapezoid(const std::function<Complex(double)>& f, double a, double b, long n) {
  Complex sum = 0.5 * (f(a) + f(b));
  double h = (b - a) / double(n);
  for (long i = 1; i < n; ++i) sum += f(a + h * double(i));
  return sum * h;
}

}  // namespace

TEST_CASE("principal value: constant and linear integrands") {
  QuadOptions quad;
  Contour seg = {ContourSegment::interval(-1.0, 1.0)};
  auto one = [](double) { return Complex(1.0); };
  CHECK(std::abs(principal_value_integral(one, 0.0, seg, quad)) < 1e-12);
  auto lin = [](double s) { return Complex(s); };
  CHECK(std::abs(principal_value_integral(lin, 0.0, seg, quad) - 2.0) < 1e-12);
}

TEST_CASE("principal value: even log integrand on the full line is odd overall") {
  // oracle: dense trapezoid on [-1e4, 1e4] of log((s^2 + 1/4)/(1 + s^2)) / s
  double A = 1.0;
  auto f = [&](double s) { return Complex(std::log((s * s + A * A / 4.0) / (1.0 + s * s))); };
  QuadOptions quad;
  Contour line = {ContourSegment::ray_minus(-8.0), ContourSegment::interval(-8.0, 8.0),
                  ContourSegment::ray_plus(8.0)};
  Complex pv = principal_value_integral(f, 0.0, line, quad);
  CHECK(std::abs(pv) < 1e-8);
  // brute-force oracle: midpoints symmetric about the pole cancel pairwise
  Complex oracle = 0.0;
  {
    const long n = 1000000;
    const double h = 1e4 / double(n);
    for (long j = 0; j < n; ++j) {
      double s = (double(j) + 0.5) * h;
      oracle += (f(s) - f(-s)) / s * h;
    }
  }
  CHECK(std::abs(pv - oracle) < 1e-6);
}

TEST_CASE("principal value: pole outside the domain") {
  QuadOptions quad;
  Contour seg = {ContourSegment::interval(-1.0, 1.0)};
  auto one = [](double) { return Complex(1.0); };
  CHECK_THROWS_AS(principal_value_integral(one, 2.0, seg, quad), Error);
}

TEST_CASE("non-decaying ray tails are rejected") {
  QuadOptions quad;
  auto slow = [](double s) { return Complex(1.0 / std::sqrt(std::abs(s) + 1.0)); };
  CHECK_THROWS_AS(integrate_segment(slow, ContourSegment::ray_plus(1.0), quad), Error);
}

TEST_CASE("cauchy integral of a constant over a finite segment") {
  QuadOptions quad;
  Contour seg = {ContourSegment::interval(-1.0, 2.0)};
  Complex k(0.5, 0.8);
  Complex c(1.3, -0.4);
  Complex got = cauchy_contour_integral([&](double) { return c; }, k, seg, quad);
  Complex expected = c / (2.0 * kPi * kImag) * std::log((2.0 - k) / (-1.0 - k));
  CHECK(std::abs(got - expected) < 1e-10);
}

TEST_CASE("cauchy integral of a gaussian against a dense trapezoid") {
  QuadOptions quad;
  Contour line = {ContourSegment::ray_minus(-4.0), ContourSegment::interval(-4.0, 4.0),
                  ContourSegment::ray_plus(4.0)};
  auto g = [](double s) { return Complex(std::exp(-s * s)); };
  Complex k(0.0, 1.0);
  Complex got = cauchy_contour_integral(g, k, line, quad);
  Complex oracle =
      trapezoid([&](double s) { return g(s) / (s - k); }, -30.0, 30.0, 4000000) /
      (2.0 * kPi * kImag);
  CHECK(std::abs(got - oracle) < 1e-8);
}

TEST_CASE("cauchy boundary values satisfy Sokhotski-Plemelj") {
  QuadOptions quad;
  Contour line = {ContourSegment::ray_minus(-2.0), ContourSegment::interval(-2.0, 2.0),
                  ContourSegment::ray_plus(2.0)};
  auto g = [](double s) { return Complex(1.0 / (1.0 + s * s), s / (4.0 + s * s * s * s)); };
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int i = 0; i < 50; ++i) {
    double k = u(rng);
    Complex plus = cauchy_boundary_value(g, k, +1, line, quad);
    Complex minus = cauchy_boundary_value(g, k, -1, line, quad);
    CHECK(std::abs(plus - minus - g(k)) < 1e-8);
  }
  // boundary value agrees with the off-contour limit
  double k = 1.3;
  Complex above = cauchy_contour_integral(g, Complex(k, 1e-6), line, quad);
  CHECK(std::abs(above - cauchy_boundary_value(g, k, +1, line, quad)) < 1e-4);
}

TEST_CASE("on-contour evaluation without a side flag is refused") {
  QuadOptions quad;
  Contour seg = {ContourSegment::interval(-1.0, 1.0)};
  auto g = [](double) { return Complex(1.0); };
  CHECK_THROWS_AS(cauchy_contour_integral(g, Complex(0.3, 0.0), seg, quad), Error);
}

TEST_CASE("cauchy integral of zero is zero") {
  QuadOptions quad;
  Contour line = {ContourSegment::ray_minus(-1.0), ContourSegment::ray_plus(1.0)};
  CHECK(cauchy_contour_integral([](double) { return Complex(0.0); }, Complex(0.0, 2.0), line,
                                quad) == Complex(0.0));
}
