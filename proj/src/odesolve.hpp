#ifndef NMKDV_ODESOLVE_HPP
#define NMKDV_ODESOLVE_HPP

// Dormand-Prince 5(4) with adaptive steps for small complex systems.

#include <algorithm>
#include <array>
#include <cmath>

#include "nmkdv_types.hpp"

namespace nmkdv {

template <size_t N>
using CVec = std::array<Complex, N>;

struct OdeOptions {
  double rtol = 1e-11;
  double atol = 1e-14;
  long max_steps = 2000000;
};

// Integrates y' = rhs(x, y) from x0 to x1 (either direction), in place.
template <size_t N, typename Rhs>
void integrate_ode(const Rhs& rhs, double x0, double x1, CVec<N>& y, const OdeOptions& opt) {
  if (x0 == x1) return;
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  double dir = (x1 > x0) ? 1.0 : -1.0;
  double span = std::abs(x1 - x0);
  double h = dir * std::min(span, std::max(1e-6, span / 64.0));
  double x = x0;
  CVec<N> k1, k2, k3, k4, k5, k6, k7, tmp, y5;
  rhs(x, y, k1);
  for (long step = 0; step < opt.max_steps; ++step) {
    if ((x - x1) * dir >= 0.0) return;
    if ((x + h - x1) * dir > 0.0) h = x1 - x;

    auto stage = [&](const std::array<double, 6>& as, double cc, CVec<N>& out) {
      for (size_t i = 0; i < N; ++i) {
        Complex acc = y[i];
        const CVec<N>* ks[6] = {&k1, &k2, &k3, &k4, &k5, &k6};
        for (int j = 0; j < 6; ++j) {
          if (as[j] != 0.0) acc += h * as[j] * (*ks[j])[i];
        }
        tmp[i] = acc;
      }
      rhs(x + cc * h, tmp, out);
    };
    stage({a21, 0, 0, 0, 0, 0}, c2, k2);
    stage({a31, a32, 0, 0, 0, 0}, c3, k3);
    stage({a41, a42, a43, 0, 0, 0}, c4, k4);
    stage({a51, a52, a53, a54, 0, 0}, c5, k5);
    stage({a61, a62, a63, a64, a65, 0}, 1.0, k6);
    for (size_t i = 0; i < N; ++i) {
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    rhs(x + h, y5, k7);

    double err = 0.0;
    for (size_t i = 0; i < N; ++i) {
      Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                       e7 * k7[i]);
      double scale = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / scale);
    }
    if (err <= 1.0) {
      x += h;
      y = y5;
      k1 = k7;  // FSAL
    }
    double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
    if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(x))) {
      fail(Errc::not_converged, "ODE step size underflow");
    }
  }
  fail(Errc::not_converged, "ODE step budget exceeded");
}

}  // namespace nmkdv

#endif
