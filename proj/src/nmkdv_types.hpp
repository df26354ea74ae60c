#ifndef NMKDV_TYPES_HPP
#define NMKDV_TYPES_HPP

// Shared scalar/matrix types and the error taxonomy used across the library.

#include <complex>
#include <stdexcept>
#include <string>

namespace nmkdv {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kImag{0.0, 1.0};

enum class Errc {
  ok = 0,
  invalid_argument,
  io_failure,
  not_converged,
  // special functions / quadrature
  pole_at_nonpositive_integer,
  out_of_validated_range,
  non_decaying_tail,
  pole_outside_domain,
  evaluation_on_contour_without_side_flag,
  // scattering
  singular_at_origin,
  overflow_gauge,
  non_analytic_column_request,
  too_close_to_origin,
  spectral_zero_on_real_axis,
  asymmetric_grid,
  // spectral
  ambiguous_classification,
  no_sign_change,
  multiple_zeros,
  log_branch_jump,
  proportionality_violated,
  winding_out_of_range,
  endpoint_divergence,
  nu_out_of_range,
  // asymptotics
  wrong_sector,
  singular_denominator,
  on_singular_line,
  on_time_axis,
  degenerate_jump,
  // validation
  grid_too_small,
  grid_too_narrow,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

// 2x2 complex matrix, row major. Small enough that value semantics win.
struct Mat2 {
  Complex m00{0.0}, m01{0.0}, m10{0.0}, m11{0.0};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex det() const { return m00 * m11 - m01 * m10; }

  Mat2 inverse() const {
    Complex d = det();
    return {m11 / d, -m01 / d, -m10 / d, m00 / d};
  }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
  }

  double max_abs() const;
};

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace nmkdv

#endif
