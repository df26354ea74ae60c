#ifndef NMKDV_QUADRATURE_HPP
#define NMKDV_QUADRATURE_HPP

// Adaptive Gauss-Kronrod quadrature on unions of intervals and rays, plus the
// principal-value and Cauchy-type integrals built on it.

#include <functional>
#include <vector>

#include "nmkdv_types.hpp"

namespace nmkdv {

using Integrand = std::function<Complex(double)>;

struct ContourSegment {
  enum class Kind { finite_interval, ray_to_plus_inf, ray_to_minus_inf };
  Kind kind = Kind::finite_interval;
  double a = 0.0;  // left endpoint (finite_interval, ray_to_plus_inf)
  double b = 0.0;  // right endpoint (finite_interval, ray_to_minus_inf)

  static ContourSegment interval(double a, double b);
  static ContourSegment ray_plus(double from);
  static ContourSegment ray_minus(double to);

  bool contains(double s) const;
};

using Contour = std::vector<ContourSegment>;

struct QuadOptions {
  double abs_tol = 1e-10;
  long max_evals = 200000;
  // Per-interval error-estimate level treated as rounding noise; intervals
  // whose Gauss-Kronrod discrepancy sits at this level are accepted. Used by
  // the p.v. path, where the subtraction quotient amplifies roundoff.
  double noise_floor = 0.0;
};

// Plain integral of f over one segment / a contour. Ray tails are folded onto
// a finite interval through s -> 1/u; the integrand must decay like O(s^-2).
Complex integrate_segment(const Integrand& f, const ContourSegment& seg, const QuadOptions& opt);
Complex integrate_contour(const Integrand& f, const Contour& contour, const QuadOptions& opt);

// p.v. integral of f(s)/(s - pole) over the contour, pole strictly inside one
// segment. Singularity subtraction on the pole's segment.
Complex principal_value_integral(const Integrand& f, double pole, const Contour& contour,
                                 const QuadOptions& opt);

// (1/2 pi i) * integral of g(s)/(s - k) over the contour, k off the contour.
Complex cauchy_contour_integral(const Integrand& g, Complex k, const Contour& contour,
                                const QuadOptions& opt);

// Boundary values: side = +1 above the contour, -1 below (Sokhotski-Plemelj).
Complex cauchy_boundary_value(const Integrand& g, double k, int side, const Contour& contour,
                              const QuadOptions& opt);

}  // namespace nmkdv

#endif
