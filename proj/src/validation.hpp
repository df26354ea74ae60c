#ifndef NMKDV_VALIDATION_HPP
#define NMKDV_VALIDATION_HPP

// Residual checker for candidate solution fields of
//   u_t + 6 sigma u(x,t) u(-x,-t) u_x + u_xxx = 0
// on symmetric (x,t) lattices, plus the boundary-condition report.

#include <functional>
#include <string>
#include <vector>

#include "nmkdv_types.hpp"

namespace nmkdv {

struct FieldGrid {
  std::vector<double> x_values;  // symmetric ascending, uniform
  std::vector<double> t_values;  // symmetric ascending, uniform
  std::vector<double> u;         // row-major, u[it * nx + ix]

  size_t nx() const { return x_values.size(); }
  size_t nt() const { return t_values.size(); }
  double at(size_t it, size_t ix) const { return u[it * nx() + ix]; }
  double& at(size_t it, size_t ix) { return u[it * nx() + ix]; }
  // exact sample lookup of u(-x,-t)
  double mirror(size_t it, size_t ix) const { return u[(nt() - 1 - it) * nx() + (nx() - 1 - ix)]; }

  double dx() const { return x_values[1] - x_values[0]; }
  double dt() const { return t_values[1] - t_values[0]; }

  void check_symmetric() const;  // throws AsymmetricGrid / GridTooSmall

  static FieldGrid sample(const std::function<double(double, double)>& f, double x_max, double hx,
                          double t_max, double ht);
  static FieldGrid read_csv(const std::string& path);
  void write_csv(const std::string& path, const std::vector<std::string>& metadata = {}) const;
};

// Interior residual of the PDE with 4th-order stencils (5-point first
// derivatives, 7-point third derivative). Bands of width 3 in x and 2 in t
// are excluded.
struct ResidualResult {
  FieldGrid residual;  // interior sub-grid
  double max_abs = 0.0;
  double rms = 0.0;
};
ResidualResult pde_residual(const FieldGrid& field, int sigma = +1);

struct BoundaryReport {
  std::vector<double> right_gap;  // per t row: max |u - A| on rightmost 10%
  std::vector<double> left_gap;   // per t row: max |u| on leftmost 10%
  double right_max = 0.0;
  double left_max = 0.0;
};
BoundaryReport boundary_check(const FieldGrid& field, double A);

}  // namespace nmkdv

#endif
