#ifndef NMKDV_SPECFUN_HPP
#define NMKDV_SPECFUN_HPP

// Complex Gamma and Weber (parabolic cylinder) functions.

#include "nmkdv_types.hpp"

namespace nmkdv {

// log Gamma(z), principal determination away from the negative real axis.
Complex lgamma_complex(Complex z);

// Gamma(z). Throws PoleAtNonPositiveInteger within 1e-12 of a pole.
// Relative error <= 1e-11 on |Re z| <= 20, |Im z| <= 20.
Complex gamma_complex(Complex z);

// 1/Gamma(z); entire, returns 0 at the poles of Gamma.
Complex rgamma_complex(Complex z);

// Weber function D_a(z), complex order and argument, validated for |z| <= 50.
// Maclaurin (even/odd Kummer basis) below |z| = 8, asymptotic expansion with
// connection formulas beyond.
Complex weber_d(Complex a, Complex z);

// d/dz D_a(z) via a*D_{a-1}(z) - (z/2)*D_a(z).
Complex weber_d_deriv(Complex a, Complex z);

}  // namespace nmkdv

#endif
