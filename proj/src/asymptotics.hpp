#ifndef NMKDV_ASYMPTOTICS_HPP
#define NMKDV_ASYMPTOTICS_HPP

// Space-time sector classification and the explicit large-time formulas:
// Zakharov-Manakov sectors (x<0,t>0 and x>0,t<0) driven by the saddle-point
// constants, solitonic/radiation sectors for x t > 0, and the parabolic
// cylinder parametrix used to cross-check the constants.

#include <optional>
#include <string>

#include "spectral.hpp"

namespace nmkdv {

enum class Sector {
  R_I_L,
  R_I_M,
  R_I_R,
  R_II,
  R_III_L,
  R_III_M,
  R_III_R,
  R_IV,
  Boundary,
};
const char* sector_name(Sector s);

// theta(k, xi) = 4 k^3 + 12 k xi.
Complex phase_theta(Complex k, double xi);
// Saddle points theta'(k) = 0: +-sqrt(-xi) for xi < 0, +-i sqrt(xi) for xi > 0.
std::pair<Complex, Complex> phase_saddles(double xi);

Sector classify_sector(double x, double t, double kappa, double boundary_tol = 1e-9);

struct AsymOptions {
  std::optional<double> alpha;
  std::optional<double> kappa_delta;
};

struct AsymptoticResult {
  Sector sector = Sector::Boundary;
  double u_leading = 0.0;
  double u_subleading = 0.0;
  double u_total = 0.0;
  std::string error_order;
  double error_exponent = 0.0;  // power of tau (ZM sectors) or the coefficient
                                // of t in the exponential rate (soliton sectors)
  // constants block
  double k0 = 0.0, eta = 0.0, rho = 0.0, tau = 0.0;
  double alpha = 0.0, kappa_delta = 0.0, epsilon = 0.0;
  Complex nu, phi0, beta, gamma, q1, q2, C1, C2;
};

// Saddle-point constants for a ray xi < 0 at time t.
struct ZmParams {
  double k0 = 0.0, eta = 0.0, rho = 0.0, tau = 0.0;
  Complex nu, phi0, q1, q2, beta, gamma;
  double alpha = 0.0, lambda = 0.0, epsilon = 0.0;
  bool degenerate = false;  // r1 r2 (-k0) = 0: beta = gamma = 0, nu = 0
};
ZmParams asym_params(const SpectralData& data, const DeltaCache& cache, double t,
                     std::optional<double> alpha_override = {});

AsymptoticResult evaluate_RII(const SpectralData& data, const DeltaCache& cache, double x,
                              double t, const AsymOptions& opt = {});
AsymptoticResult evaluate_RIV(const SpectralData& data, const DeltaCache& cache, double x,
                              double t, const AsymOptions& opt = {});
AsymptoticResult evaluate_RI(const SpectralData& data, double x, double t,
                             const AsymOptions& opt = {});
AsymptoticResult evaluate_RIII(const SpectralData& data, double x, double t,
                               const AsymOptions& opt = {});

// Classifies and dispatches; cache may be null for x t > 0 points. Boundary
// points come back with NaN values and the Boundary tag.
AsymptoticResult evaluate_asym(const SpectralData& data, const DeltaCache* cache, double x,
                               double t, const AsymOptions& opt = {});

// Sweep over a rectangular (x,t) set; builds one DeltaCache per distinct ray.
// Rows with t = 0 are skipped (no sector is defined there).
void write_asym_sweep_csv(const SpectralData& data, const std::vector<double>& xs,
                          const std::vector<double>& ts, const AsymOptions& opt,
                          const std::string& path, const std::vector<std::string>& metadata);

// Log-log slope of the subleading envelope along the cache's ray, |t| from
// 1e2 to 1e6; the envelope is sampled over one oscillation period per target.
// riv = false evaluates the x<0,t>0 sector, true the x>0,t<0 one.
double subleading_slope(const SpectralData& data, const DeltaCache& cache, bool riv);

// beta/gamma from (nu, q1, q2); the pair satisfies beta * gamma = nu.
std::pair<Complex, Complex> beta_gamma_from_q(Complex nu, Complex q1, Complex q2);

// Explicit parabolic-cylinder model with jump [[1 + q1 q2, q2], [q1, 1]].
class ParametrixModel {
 public:
  ParametrixModel(Complex nu, Complex q1, Complex q2);

  Complex nu() const { return nu_; }
  Complex beta() const { return beta_; }
  Complex gamma() const { return gamma_; }
  Mat2 jump_matrix() const;

  // half_plane: +1 upper formulas, -1 lower; real zeta gives boundary values.
  Mat2 m0(Complex zeta, int half_plane) const;
  Mat2 m_pc(Complex zeta, int half_plane) const;

  double jump_residual(double zeta) const;
  Complex reconstruct_q1(double zeta) const;

  // Recovers the 1/zeta coefficient of m_pc from a circle contour integral.
  struct Recovered {
    Complex beta, gamma;
  };
  Recovered recover_from_expansion(double radius = 12.0) const;

 private:
  Complex nu_, q1_, q2_, beta_, gamma_, c12_, c21_;
};

}  // namespace nmkdv

#endif
