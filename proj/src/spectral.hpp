#ifndef NMKDV_SPECTRAL_HPP
#define NMKDV_SPECTRAL_HPP

// Discrete spectrum (kappa, gamma0), Case I/II classification, and the
// delta / nu / chi machinery of the scalar Riemann-Hilbert conjugation.

#include <memory>
#include <optional>
#include <vector>

#include "quadrature.hpp"
#include "scattering.hpp"

namespace nmkdv {

enum class CaseTag { I, II };

struct GridOptions {
  double k_min = 1e-3;
  double k_max = 50.0;
  int n = 2048;  // total points, symmetric under k -> -k
  JostOptions jost;
  QuadOptions quad;              // for the kappa formula and delta caches
  double eps_case = 1e-3;        // |a2(0)| threshold factor for Case II
  double y_max_factor = 10.0;    // kappa search upper bound, times A
  bool verify_unique_zero = true;
};

class JumpLog;
struct LazyJumpLog;

struct SpectralData {
  std::shared_ptr<const SpectralFunctions> functions;
  GridOptions options;
  std::vector<double> k_grid;
  std::vector<ScatteringSample> samples;
  std::vector<ReflectionSample> reflections;
  double A = 0.0;
  int sigma = +1;
  double kappa = 0.0;
  Complex a1_prime;  // a1'(i kappa)
  int gamma0 = -1;
  CaseTag case_tag = CaseTag::I;
  Complex a2_at_0;               // Case I
  Complex a11, a2_prime_0;       // Case II
  // jump-log table shared by every DeltaCache built on this data set
  std::shared_ptr<LazyJumpLog> jump_log_slot;
  std::shared_ptr<const JumpLog> jump_log(double s_min, double s_max, int n_per_side) const;
};

SpectralData build_spectral_data(std::shared_ptr<const SpectralFunctions> f,
                                 const GridOptions& opt = {});

// Synthetic reflectionless data (Case II): kappa = A/2, a1'(i kappa) = -i/kappa,
// a11 = A/(2i), a2'(0) = 2i/A. gamma0 is a free sign of the soliton family.
SpectralData soliton_spectral_fixture(double A, int gamma0 = -1, const GridOptions& opt = {});

CaseTag classify_case(const std::vector<ScatteringSample>& samples, double eps_case = 1e-3);

// Analytic continuation of a1 to Im k >= 0 (thin wrapper kept for symmetry
// with the rest of the per-operation API).
Complex continue_a1(const SpectralFunctions& f, Complex k);

struct KappaRoot {
  double kappa = 0.0;
  Complex a1_prime;
};
KappaRoot find_kappa_root(const SpectralFunctions& f, const GridOptions& opt = {});

struct KappaFormula {
  double kappa = 0.0;
  double imag_residual = 0.0;  // |Im| of the complex evaluation, reported
};
KappaFormula kappa_by_formula(const SpectralFunctions& f, CaseTag tag,
                              const QuadOptions& quad = {});

int gamma0_factor(const SpectralFunctions& f, double kappa);

// Contour-continuous log(1 + r1 r2) along the real axis, anchored to 0 at
// +-infinity. Tabulated once per data set; closed under s -> -s symmetry.
class JumpLog {
 public:
  virtual ~JumpLog() = default;
  virtual Complex logw(double s) const = 0;  // log|w| + i arg_cont
  virtual bool trivial() const { return false; }
};

std::shared_ptr<const JumpLog> make_jump_log(const SpectralFunctions& f, double s_min = 1e-3,
                                             double s_max = 600.0, int n_per_side = 4096);

struct NuValue {
  Complex nu;
  double Delta = 0.0;
};
// nu(-k0) from the modulus at -k0 and the winding Delta(-k0) of 1 + r1 r2.
NuValue nu_at(const SpectralFunctions& f, const JumpLog& logw, double k0);

struct DeltaOptions {
  QuadOptions quad;
  double table_s_min = 1e-3;
  double table_s_max = 600.0;  // O(s^-2) tail model beyond
  int table_n_per_side = 4096;
};

// Everything tied to one ray xi < 0: nu, Delta, delta at marked points, chi.
class DeltaCache {
 public:
  static DeltaCache build(const SpectralData& data, double xi, const DeltaOptions& opt = {});

  double xi() const { return xi_; }
  double k0() const { return k0_; }
  Complex nu() const { return nu_; }
  double Delta() const { return Delta_; }
  Complex delta_at_0() const { return delta0_; }
  Complex delta_at_ikappa() const { return delta_ik_; }
  Complex chi_at_minus_k0() const { return chi_; }
  Complex chi_hat_at_minus_k0() const { return chihat_; }
  bool reflectionless() const { return logw_->trivial(); }

  Complex delta(Complex k) const;                    // k off the contour
  Complex delta_boundary(double k, int side) const;  // k on a ray
  Complex chi_hat(Complex k) const;                  // k off the contour
  Complex log_jump(double s) const { return logw_->logw(s); }

  // r1, r2 at -k0 (direct evaluation, for the q1/q2 constants downstream).
  Complex r1_at_minus_k0() const { return r1_mk0_; }
  Complex r2_at_minus_k0() const { return r2_mk0_; }

 private:
  double xi_ = 0.0, k0_ = 0.0, Delta_ = 0.0;
  Complex nu_, delta0_, delta_ik_, chi_, chihat_, r1_mk0_, r2_mk0_;
  std::shared_ptr<const JumpLog> logw_;
  Contour contour_;
  QuadOptions quad_;
};

// Spectral CSV dump, one row per grid k:
//   k,a1_re,a1_im,a2_re,a2_im,b_re,b_im,r1_re,r1_im,r2_re,r2_im
void write_spectral_csv(const SpectralData& data, const std::string& path,
                        const std::vector<std::string>& metadata);

// One JSON-lines record for a delta cache.
std::string delta_jsonl_line(const DeltaCache& cache);
void write_delta_jsonl(const std::vector<DeltaCache>& caches, const std::string& path);

}  // namespace nmkdv

#endif
