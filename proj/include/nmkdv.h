#ifndef NMKDV_H
#define NMKDV_H

/*
 * C interface to the nmkdv library: direct scattering for the focusing
 * reverse-space-time MKdV equation with step-like initial data, large-time
 * asymptotic evaluation in every space-time sector, and the residual /
 * boundary verification tools.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Every fallible call returns an nmkdv_status; 0 is success. Outputs are
 * written only on success.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nmkdv_status {
  NMKDV_OK = 0,
  NMKDV_E_INVALID_ARGUMENT,
  NMKDV_E_IO,
  NMKDV_E_NOT_CONVERGED,
  NMKDV_E_POLE_AT_NONPOSITIVE_INTEGER,
  NMKDV_E_OUT_OF_VALIDATED_RANGE,
  NMKDV_E_NON_DECAYING_TAIL,
  NMKDV_E_POLE_OUTSIDE_DOMAIN,
  NMKDV_E_ON_CONTOUR_WITHOUT_SIDE,
  NMKDV_E_SINGULAR_AT_ORIGIN,
  NMKDV_E_OVERFLOW_GAUGE,
  NMKDV_E_NON_ANALYTIC_COLUMN,
  NMKDV_E_TOO_CLOSE_TO_ORIGIN,
  NMKDV_E_SPECTRAL_ZERO_ON_REAL_AXIS,
  NMKDV_E_ASYMMETRIC_GRID,
  NMKDV_E_AMBIGUOUS_CLASSIFICATION,
  NMKDV_E_NO_SIGN_CHANGE,
  NMKDV_E_MULTIPLE_ZEROS,
  NMKDV_E_LOG_BRANCH_JUMP,
  NMKDV_E_PROPORTIONALITY_VIOLATED,
  NMKDV_E_WINDING_OUT_OF_RANGE,
  NMKDV_E_ENDPOINT_DIVERGENCE,
  NMKDV_E_NU_OUT_OF_RANGE,
  NMKDV_E_WRONG_SECTOR,
  NMKDV_E_SINGULAR_DENOMINATOR,
  NMKDV_E_ON_SINGULAR_LINE,
  NMKDV_E_ON_TIME_AXIS,
  NMKDV_E_DEGENERATE_JUMP,
  NMKDV_E_GRID_TOO_SMALL,
  NMKDV_E_GRID_TOO_NARROW,
  NMKDV_E_UNKNOWN
} nmkdv_status;

const char* nmkdv_strerror(nmkdv_status code);
const char* nmkdv_version(void);

/* Shortest decimal form that round-trips to the same double; buf >= 32. */
void nmkdv_format_double(double v, char* buf, size_t buf_len);

/* ------------------------------------------------------------------ */
/* profiles                                                            */

typedef struct nmkdv_profile nmkdv_profile;

nmkdv_status nmkdv_profile_pure_step(double A, nmkdv_profile** out);
nmkdv_status nmkdv_profile_smooth_step(double A, double width, nmkdv_profile** out);
nmkdv_status nmkdv_profile_bump_step(double A, double height, double center, double width,
                                     nmkdv_profile** out);
nmkdv_status nmkdv_profile_read_csv(const char* path, nmkdv_profile** out);
nmkdv_status nmkdv_profile_write_csv(const nmkdv_profile* p, const char* path);
void nmkdv_profile_free(nmkdv_profile* p);

double nmkdv_profile_eval(const nmkdv_profile* p, double x); /* u0(x) */
double nmkdv_profile_background(const nmkdv_profile* p);
double nmkdv_profile_support(const nmkdv_profile* p);

/* ------------------------------------------------------------------ */
/* scattering and spectral data                                        */

typedef struct nmkdv_spectral nmkdv_spectral;

typedef struct nmkdv_grid_options {
  double k_min;    /* default 1e-3  */
  double k_max;    /* default 50    */
  int n_k;         /* default 2048, even */
  double ode_rtol; /* default 1e-11 */
  double quad_tol; /* absolute quadrature tolerance, default 1e-10 */
  double eps_case; /* Case II threshold factor, default 1e-3 */
  int verify_unique_zero; /* default 1 */
} nmkdv_grid_options;

void nmkdv_grid_options_default(nmkdv_grid_options* opt);

/* Full direct-scattering pass over the profile (kappa, gamma0, case, grid). */
nmkdv_status nmkdv_scatter(const nmkdv_profile* p, const nmkdv_grid_options* opt_or_null,
                           nmkdv_spectral** out);

/* Synthetic reflectionless (one-soliton) data; gamma0 is +1 or -1. */
nmkdv_status nmkdv_spectral_reflectionless(double A, int gamma0, nmkdv_spectral** out);

void nmkdv_spectral_free(nmkdv_spectral* sp);

typedef struct nmkdv_spectral_info {
  double A;
  int sigma;
  double kappa;
  int gamma0;
  int case_tag; /* 1 or 2 */
  double a1_prime_re, a1_prime_im; /* a1'(i kappa) */
  double a2_at_0_re, a2_at_0_im;   /* Case I */
  double a11_re, a11_im;           /* Case II */
  double a2_prime_0_re, a2_prime_0_im;
  size_t n_grid;
} nmkdv_spectral_info;

nmkdv_status nmkdv_spectral_get_info(const nmkdv_spectral* sp, nmkdv_spectral_info* out);

/* a1, a2, b, r1, r2 at real k: out = {a1_re, a1_im, ..., r2_im}, 10 values. */
nmkdv_status nmkdv_spectral_eval(const nmkdv_spectral* sp, double k, double out[10]);

/* kappa recomputed from the principal-value trace formulas. */
nmkdv_status nmkdv_kappa_by_formula(const nmkdv_spectral* sp, double* kappa,
                                    double* imag_residual);

typedef struct nmkdv_identity_report {
  double det_s, b_symmetry, a1_symmetry, a2_symmetry, unit_relation, large_k_a, large_k_b;
} nmkdv_identity_report;

nmkdv_status nmkdv_verify_identities(const nmkdv_spectral* sp, nmkdv_identity_report* out);

/* CSV schema: k,a1_re,a1_im,a2_re,a2_im,b_re,b_im,r1_re,r1_im,r2_re,r2_im */
nmkdv_status nmkdv_spectral_write_csv(const nmkdv_spectral* sp, const char* path,
                                      const char* const* metadata, size_t n_metadata);

/* ------------------------------------------------------------------ */
/* delta cache (one ray xi < 0)                                        */

typedef struct nmkdv_delta nmkdv_delta;

nmkdv_status nmkdv_delta_build(const nmkdv_spectral* sp, double xi, nmkdv_delta** out);
void nmkdv_delta_free(nmkdv_delta* d);

typedef struct nmkdv_delta_info {
  double xi, k0;
  double nu_re, nu_im;
  double Delta;
  double delta0_re, delta0_im;
  double delta_ikappa_re, delta_ikappa_im;
  double chi_re, chi_im;
  double chi_hat_re, chi_hat_im;
} nmkdv_delta_info;

nmkdv_status nmkdv_delta_get_info(const nmkdv_delta* d, nmkdv_delta_info* out);

/* delta(k) off the contour (side 0) or boundary values (side +1 / -1). */
nmkdv_status nmkdv_delta_eval(const nmkdv_delta* d, double k_re, double k_im, int side,
                              double out[2]);

/* JSON-lines dump: {"xi": ..., "k0": ..., "nu_re": ..., ...} per cache. */
nmkdv_status nmkdv_delta_write_jsonl(const nmkdv_delta* const* caches, size_t n,
                                     const char* path);

/* ------------------------------------------------------------------ */
/* one-soliton and field grids                                         */

nmkdv_status nmkdv_soliton_eval(double A, int gamma0, double x, double t, double* u);

typedef struct nmkdv_field nmkdv_field;

/* Symmetric lattice covering [-x_max, x_max] x [-t_max, t_max]. */
nmkdv_status nmkdv_soliton_field(double A, int gamma0, double x_max, double hx, double t_max,
                                 double ht, nmkdv_field** out);
nmkdv_status nmkdv_field_read_csv(const char* path, nmkdv_field** out);
nmkdv_status nmkdv_field_write_csv(const nmkdv_field* f, const char* path,
                                   const char* const* metadata, size_t n_metadata);
void nmkdv_field_free(nmkdv_field* f);

nmkdv_status nmkdv_field_dims(const nmkdv_field* f, size_t* nt, size_t* nx);
nmkdv_status nmkdv_field_get(const nmkdv_field* f, size_t it, size_t ix, double* u);

/* ------------------------------------------------------------------ */
/* PDE residual and boundary checks                                    */

typedef struct nmkdv_residual_stats {
  double max_abs;
  double rms;
  size_t n_interior;
} nmkdv_residual_stats;

nmkdv_status nmkdv_pde_residual(const nmkdv_field* f, int sigma, nmkdv_residual_stats* out,
                                nmkdv_field** residual_or_null);

typedef struct nmkdv_boundary_stats {
  double right_max_gap; /* max |u - A| on the rightmost 10% */
  double left_max_gap;  /* max |u| on the leftmost 10% */
} nmkdv_boundary_stats;

nmkdv_status nmkdv_boundary_check(const nmkdv_field* f, double A, nmkdv_boundary_stats* out);

/* ------------------------------------------------------------------ */
/* sectors and asymptotic evaluation                                   */

typedef enum nmkdv_sector {
  NMKDV_SECTOR_R_I_L = 0,
  NMKDV_SECTOR_R_I_M,
  NMKDV_SECTOR_R_I_R,
  NMKDV_SECTOR_R_II,
  NMKDV_SECTOR_R_III_L,
  NMKDV_SECTOR_R_III_M,
  NMKDV_SECTOR_R_III_R,
  NMKDV_SECTOR_R_IV,
  NMKDV_SECTOR_BOUNDARY
} nmkdv_sector;

const char* nmkdv_sector_name(nmkdv_sector s);

nmkdv_status nmkdv_classify_sector(double x, double t, double kappa, nmkdv_sector* out);

typedef struct nmkdv_asym_options {
  double alpha;       /* <= 0: default (lambda+1)/2 */
  double kappa_delta; /* <= 0: default kappa/2 */
} nmkdv_asym_options;

typedef struct nmkdv_asym_result {
  int sector;
  double u_leading, u_subleading, u_total;
  double error_exponent;
  char error_order[64];
  double k0, eta, rho, tau, alpha, kappa_delta, epsilon;
  double nu_re, nu_im;
  double phi0_re, phi0_im; /* phi(xi, 0) = 16 i k0^3 */
  double beta_re, beta_im, gamma_re, gamma_im;
  double q1_re, q1_im, q2_re, q2_im;
  double c1_re, c1_im, c2_re, c2_im;
} nmkdv_asym_result;

/* cache may be NULL for x t > 0 points. */
nmkdv_status nmkdv_asym_eval(const nmkdv_spectral* sp, const nmkdv_delta* cache_or_null,
                             double x, double t, const nmkdv_asym_options* opt_or_null,
                             nmkdv_asym_result* out);

/* Sweep a rectangular (x,t) set; caches are built per distinct ray.
   CSV schema: x,t,xi,sector,u_leading,u_subleading,u_total,error_order_exponent */
nmkdv_status nmkdv_asym_sweep_csv(const nmkdv_spectral* sp, const double* xs, size_t n_x,
                                  const double* ts, size_t n_t,
                                  const nmkdv_asym_options* opt_or_null, const char* path,
                                  const char* const* metadata, size_t n_metadata);

/* ------------------------------------------------------------------ */
/* invariant suite                                                     */

/* Runs the deterministic invariant suite; writes the report to path when
   non-NULL. *n_failed receives the failure count. */
nmkdv_status nmkdv_validate(const char* report_path_or_null, int* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* NMKDV_H */
