#ifndef NMKDV_SOLITON_HPP
#define NMKDV_SOLITON_HPP

// Exact one-soliton family of the focusing reverse-space-time MKdV equation.

#include "nmkdv_types.hpp"

namespace nmkdv {

struct SolitonParams {
  double A = 1.0;
  int gamma0 = -1;  // +1 carries a singular line t = x/A^2
};

// u(x,t) = A / (1 - gamma0 * exp(-A x + A^3 t)), overflow-safe.
double one_soliton(const SolitonParams& p, double x, double t);

}  // namespace nmkdv

#endif
