#ifndef NMKDV_SCATTERING_HPP
#define NMKDV_SCATTERING_HPP

// Jost solutions of the x-part of the Lax pair, the scattering matrix and
// reflection coefficients, and spectral-function evaluators (closed-form and
// ODE-backed) usable at arbitrary k.

#include <array>
#include <memory>
#include <vector>

#include "profile.hpp"

namespace nmkdv {

struct JostOptions {
  double rtol = 1e-11;
  double atol = 1e-14;
  double k_min = 1e-3;       // scattering_matrix guard
  double im_gauge_cap = 50;  // |Im k| * N beyond which the march is refused
};

// N_{+} / N_{-}: side = +1 or -1. Singular at k = 0.
Mat2 background_normalizer(double A, int sigma, Complex k, int side);

// phi_{±}(x,t,k) = N_{±} e^{-(i k x + 4 i k^3 t) sigma3}.
Mat2 background_solution(double A, int sigma, Complex k, double x, double t, int side);

// One Jost column at (x, t=0). which_psi = 1 marches from -N, 2 from +N.
// column = 1 or 2. Complex k admits only the analytic columns.
std::array<Complex, 2> jost_column(const StepProfile& profile, Complex k, int which_psi,
                                   int column, double x, const JostOptions& opt = {});

// Full psi_1, psi_2 on an ascending x grid (t = 0). Real k only.
struct JostGrid {
  std::vector<double> x;
  std::vector<Mat2> psi1, psi2;
};
JostGrid jost_solutions(const StepProfile& profile, Complex k, const std::vector<double>& xs,
                        double t = 0.0, const JostOptions& opt = {});

struct ScatteringSample {
  double k = 0.0;
  Mat2 S;
  Complex a1, a2, b;
};

struct ReflectionSample {
  double k = 0.0;
  Complex r1, r2;
};

ScatteringSample scattering_matrix(const StepProfile& profile, double k,
                                   const JostOptions& opt = {});
ReflectionSample reflection_coefficients(const ScatteringSample& s);

// Max violations over a k-symmetric batch of samples.
struct IdentityReport {
  double det_s = 0.0;        // |det S - 1|
  double b_symmetry = 0.0;   // |b(k) - conj b(-k)|
  double a1_symmetry = 0.0;  // |a1(k) - conj a1(-k)|
  double a2_symmetry = 0.0;
  double unit_relation = 0.0;  // |a1 a2 + sigma b^2 - 1|
  double large_k_a = 0.0;      // max over |k| > 0.8 kmax of |a_j - 1|
  double large_k_b = 0.0;      // max over |k| > 0.8 kmax of |k b(k)| / kmax (O(1/k) check)
  double max_violation() const;
};
IdentityReport verify_scattering_identities(const std::vector<ScatteringSample>& samples,
                                            int sigma);

// Spectral functions evaluable at arbitrary k; the interface every
// downstream quadrature consumes.
class SpectralFunctions {
 public:
  virtual ~SpectralFunctions() = default;
  virtual double background() const = 0;
  virtual int sigma() const = 0;
  virtual Complex a1(double k) const = 0;
  virtual Complex a2(double k) const = 0;
  virtual Complex b(double k) const = 0;
  virtual Complex a1_upper(Complex k) const = 0;  // Im k >= 0
  virtual bool reflectionless() const { return false; }
  // Largest Im k the evaluator supports (gauge window for ODE marching).
  virtual double max_im_k() const { return 1e300; }
  // Jost columns at (x=0, t=0); needed for gamma0.
  virtual std::array<Complex, 2> psi1_first_column(Complex k) const;
  virtual std::array<Complex, 2> psi2_second_column(Complex k) const;

  Complex r1(double k) const;
  Complex r2(double k) const;
  virtual Complex r1r2(double k) const;
  Complex one_plus_r1r2(double k) const { return 1.0 + r1r2(k); }
};

class PureStepSpectral final : public SpectralFunctions {
 public:
  PureStepSpectral(double A, int sigma = +1) : A_(A), sigma_(sigma) {}
  double background() const override { return A_; }
  int sigma() const override { return sigma_; }
  Complex a1(double k) const override { return a1_upper(k); }
  Complex a2(double) const override { return 1.0; }
  Complex b(double k) const override;
  Complex a1_upper(Complex k) const override;
  std::array<Complex, 2> psi1_first_column(Complex k) const override;
  std::array<Complex, 2> psi2_second_column(Complex k) const override;

 private:
  double A_;
  int sigma_;
};

// Reflectionless data of the one-soliton family: b = 0, a1 = (k - iA/2)/k.
class ReflectionlessSpectral final : public SpectralFunctions {
 public:
  explicit ReflectionlessSpectral(double A) : A_(A) {}
  double background() const override { return A_; }
  int sigma() const override { return +1; }
  Complex a1(double k) const override { return a1_upper(k); }
  Complex a2(double k) const override { return k / (k - kImag * (0.5 * A_)); }
  Complex b(double) const override { return 0.0; }
  Complex a1_upper(Complex k) const override { return (k - kImag * (0.5 * A_)) / k; }
  bool reflectionless() const override { return true; }

 private:
  double A_;
};

// Profile-backed evaluator; every call marches the Volterra ODEs.
class OdeSpectral final : public SpectralFunctions {
 public:
  OdeSpectral(StepProfile profile, JostOptions opt = {});
  double background() const override { return profile_.background; }
  int sigma() const override { return profile_.sigma; }
  Complex a1(double k) const override;
  Complex a2(double k) const override;
  Complex b(double k) const override;
  Complex r1r2(double k) const override;
  Complex a1_upper(Complex k) const override;
  double max_im_k() const override { return opt_.im_gauge_cap / profile_.support; }
  std::array<Complex, 2> psi1_first_column(Complex k) const override;
  std::array<Complex, 2> psi2_second_column(Complex k) const override;
  const StepProfile& profile() const { return profile_; }
  const JostOptions& options() const { return opt_; }

 private:
  ScatteringSample sample(double k) const;
  StepProfile profile_;
  JostOptions opt_;
};

}  // namespace nmkdv

#endif
