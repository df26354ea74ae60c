// extern "C" surface over the C++ core: opaque handles + status codes.

#include "nmkdv.h"

#include <cstdio>
#include <cstring>
#include <memory>
#include <new>

#include "asymptotics.hpp"
#include "dataio.hpp"
#include "soliton.hpp"
#include "validate.hpp"
#include "validation.hpp"

using namespace nmkdv;

struct nmkdv_profile {
  StepProfile p;
};
struct nmkdv_spectral {
  SpectralData d;
};
struct nmkdv_delta {
  DeltaCache c;
};
struct nmkdv_field {
  FieldGrid g;
};

namespace {

nmkdv_status map_errc(Errc e) {
  switch (e) {
    case Errc::ok: return NMKDV_OK;
    case Errc::invalid_argument: return NMKDV_E_INVALID_ARGUMENT;
    case Errc::io_failure: return NMKDV_E_IO;
    case Errc::not_converged: return NMKDV_E_NOT_CONVERGED;
    case Errc::pole_at_nonpositive_integer: return NMKDV_E_POLE_AT_NONPOSITIVE_INTEGER;
    case Errc::out_of_validated_range: return NMKDV_E_OUT_OF_VALIDATED_RANGE;
    case Errc::non_decaying_tail: return NMKDV_E_NON_DECAYING_TAIL;
    case Errc::pole_outside_domain: return NMKDV_E_POLE_OUTSIDE_DOMAIN;
    case Errc::evaluation_on_contour_without_side_flag: return NMKDV_E_ON_CONTOUR_WITHOUT_SIDE;
    case Errc::singular_at_origin: return NMKDV_E_SINGULAR_AT_ORIGIN;
    case Errc::overflow_gauge: return NMKDV_E_OVERFLOW_GAUGE;
    case Errc::non_analytic_column_request: return NMKDV_E_NON_ANALYTIC_COLUMN;
    case Errc::too_close_to_origin: return NMKDV_E_TOO_CLOSE_TO_ORIGIN;
    case Errc::spectral_zero_on_real_axis: return NMKDV_E_SPECTRAL_ZERO_ON_REAL_AXIS;
    case Errc::asymmetric_grid: return NMKDV_E_ASYMMETRIC_GRID;
    case Errc::ambiguous_classification: return NMKDV_E_AMBIGUOUS_CLASSIFICATION;
    case Errc::no_sign_change: return NMKDV_E_NO_SIGN_CHANGE;
    case Errc::multiple_zeros: return NMKDV_E_MULTIPLE_ZEROS;
    case Errc::log_branch_jump: return NMKDV_E_LOG_BRANCH_JUMP;
    case Errc::proportionality_violated: return NMKDV_E_PROPORTIONALITY_VIOLATED;
    case Errc::winding_out_of_range: return NMKDV_E_WINDING_OUT_OF_RANGE;
    case Errc::endpoint_divergence: return NMKDV_E_ENDPOINT_DIVERGENCE;
    case Errc::nu_out_of_range: return NMKDV_E_NU_OUT_OF_RANGE;
    case Errc::wrong_sector: return NMKDV_E_WRONG_SECTOR;
    case Errc::singular_denominator: return NMKDV_E_SINGULAR_DENOMINATOR;
    case Errc::on_singular_line: return NMKDV_E_ON_SINGULAR_LINE;
    case Errc::on_time_axis: return NMKDV_E_ON_TIME_AXIS;
    case Errc::degenerate_jump: return NMKDV_E_DEGENERATE_JUMP;
    case Errc::grid_too_small: return NMKDV_E_GRID_TOO_SMALL;
    case Errc::grid_too_narrow: return NMKDV_E_GRID_TOO_NARROW;
  }
  return NMKDV_E_UNKNOWN;
}

template <typename Fn>
nmkdv_status guarded(Fn&& fn) {
  try {
    fn();
    return NMKDV_OK;
  } catch (const Error& e) {
    return map_errc(e.code());
  } catch (const std::bad_alloc&) {
    return NMKDV_E_UNKNOWN;
  } catch (const std::exception&) {
    return NMKDV_E_UNKNOWN;
  }
}

std::vector<std::string> meta_vec(const char* const* metadata, size_t n) {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(metadata[i]);
  return out;
}

GridOptions grid_options(const nmkdv_grid_options* opt) {
  GridOptions g;
  if (opt) {
    g.k_min = opt->k_min;
    g.k_max = opt->k_max;
    g.n = opt->n_k;
    g.jost.rtol = opt->ode_rtol;
    g.quad.abs_tol = opt->quad_tol;
    g.eps_case = opt->eps_case;
    g.verify_unique_zero = opt->verify_unique_zero != 0;
  }
  return g;
}

AsymOptions asym_options(const nmkdv_asym_options* opt) {
  AsymOptions a;
  if (opt) {
    if (opt->alpha > 0.0) a.alpha = opt->alpha;
    if (opt->kappa_delta > 0.0) a.kappa_delta = opt->kappa_delta;
  }
  return a;
}

void copy_complex(double* re, double* im, Complex z) {
  *re = z.real();
  *im = z.imag();
}

}  // namespace

extern "C" {

const char* nmkdv_strerror(nmkdv_status code) {
  switch (code) {
    case NMKDV_OK: return "ok";
    case NMKDV_E_INVALID_ARGUMENT: return "invalid argument";
    case NMKDV_E_IO: return "i/o failure";
    case NMKDV_E_NOT_CONVERGED: return "computation did not converge";
    case NMKDV_E_POLE_AT_NONPOSITIVE_INTEGER: return "gamma pole at non-positive integer";
    case NMKDV_E_OUT_OF_VALIDATED_RANGE: return "argument outside validated range";
    case NMKDV_E_NON_DECAYING_TAIL: return "ray integrand does not decay";
    case NMKDV_E_POLE_OUTSIDE_DOMAIN: return "principal-value pole outside domain";
    case NMKDV_E_ON_CONTOUR_WITHOUT_SIDE: return "evaluation on contour without side flag";
    case NMKDV_E_SINGULAR_AT_ORIGIN: return "singular at k = 0";
    case NMKDV_E_OVERFLOW_GAUGE: return "Im k exceeds the gauge window";
    case NMKDV_E_NON_ANALYTIC_COLUMN: return "non-analytic Jost column requested";
    case NMKDV_E_TOO_CLOSE_TO_ORIGIN: return "k below the k_min guard";
    case NMKDV_E_SPECTRAL_ZERO_ON_REAL_AXIS: return "a1 or a2 vanishes on the real axis";
    case NMKDV_E_ASYMMETRIC_GRID: return "grid not symmetric";
    case NMKDV_E_AMBIGUOUS_CLASSIFICATION: return "Case I/II classification ambiguous";
    case NMKDV_E_NO_SIGN_CHANGE: return "no zero of a1 found";
    case NMKDV_E_MULTIPLE_ZEROS: return "multiple zeros of a1 detected";
    case NMKDV_E_LOG_BRANCH_JUMP: return "log branch jump in the kappa integrand";
    case NMKDV_E_PROPORTIONALITY_VIOLATED: return "Jost columns not proportional at i kappa";
    case NMKDV_E_WINDING_OUT_OF_RANGE: return "Delta outside (-pi, pi)";
    case NMKDV_E_ENDPOINT_DIVERGENCE: return "1 + r1 r2 vanishes at an endpoint";
    case NMKDV_E_NU_OUT_OF_RANGE: return "Im nu outside (-1/2, 1/2)";
    case NMKDV_E_WRONG_SECTOR: return "point not in the requested sector";
    case NMKDV_E_SINGULAR_DENOMINATOR: return "asymptotic denominator vanished";
    case NMKDV_E_ON_SINGULAR_LINE: return "on the singular line of the gamma0=+1 soliton";
    case NMKDV_E_ON_TIME_AXIS: return "sector undefined at t = 0";
    case NMKDV_E_DEGENERATE_JUMP: return "1 + q1 q2 ~ 0";
    case NMKDV_E_GRID_TOO_SMALL: return "grid too small";
    case NMKDV_E_GRID_TOO_NARROW: return "grid too narrow";
    case NMKDV_E_UNKNOWN: break;
  }
  return "unknown error";
}

const char* nmkdv_version(void) { return "1.0.0"; }

void nmkdv_format_double(double v, char* buf, size_t buf_len) {
  std::string s = format_double(v);
  std::snprintf(buf, buf_len, "%s", s.c_str());
}

/* profiles ---------------------------------------------------------- */

nmkdv_status nmkdv_profile_pure_step(double A, nmkdv_profile** out) {
  return guarded([&] { *out = new nmkdv_profile{StepProfile::pure_step(A)}; });
}
nmkdv_status nmkdv_profile_smooth_step(double A, double width, nmkdv_profile** out) {
  return guarded([&] { *out = new nmkdv_profile{StepProfile::smooth_step(A, width)}; });
}
nmkdv_status nmkdv_profile_bump_step(double A, double height, double center, double width,
                                     nmkdv_profile** out) {
  return guarded(
      [&] { *out = new nmkdv_profile{StepProfile::bump_step(A, height, center, width)}; });
}
nmkdv_status nmkdv_profile_read_csv(const char* path, nmkdv_profile** out) {
  return guarded([&] { *out = new nmkdv_profile{StepProfile::from_csv(path)}; });
}
nmkdv_status nmkdv_profile_write_csv(const nmkdv_profile* p, const char* path) {
  return guarded([&] { p->p.write_csv(path); });
}
void nmkdv_profile_free(nmkdv_profile* p) { delete p; }

double nmkdv_profile_eval(const nmkdv_profile* p, double x) { return p->p.u0(x); }
double nmkdv_profile_background(const nmkdv_profile* p) { return p->p.background; }
double nmkdv_profile_support(const nmkdv_profile* p) { return p->p.support; }

/* spectral ----------------------------------------------------------- */

void nmkdv_grid_options_default(nmkdv_grid_options* opt) {
  GridOptions g;
  opt->k_min = g.k_min;
  opt->k_max = g.k_max;
  opt->n_k = g.n;
  opt->ode_rtol = g.jost.rtol;
  opt->quad_tol = g.quad.abs_tol;
  opt->eps_case = g.eps_case;
  opt->verify_unique_zero = g.verify_unique_zero ? 1 : 0;
}

nmkdv_status nmkdv_scatter(const nmkdv_profile* p, const nmkdv_grid_options* opt,
                           nmkdv_spectral** out) {
  return guarded([&] {
    auto f = std::make_shared<OdeSpectral>(p->p, grid_options(opt).jost);
    *out = new nmkdv_spectral{build_spectral_data(f, grid_options(opt))};
  });
}

nmkdv_status nmkdv_spectral_reflectionless(double A, int gamma0, nmkdv_spectral** out) {
  return guarded([&] { *out = new nmkdv_spectral{soliton_spectral_fixture(A, gamma0)}; });
}

void nmkdv_spectral_free(nmkdv_spectral* sp) { delete sp; }

nmkdv_status nmkdv_spectral_get_info(const nmkdv_spectral* sp, nmkdv_spectral_info* out) {
  return guarded([&] {
    const SpectralData& d = sp->d;
    out->A = d.A;
    out->sigma = d.sigma;
    out->kappa = d.kappa;
    out->gamma0 = d.gamma0;
    out->case_tag = d.case_tag == CaseTag::I ? 1 : 2;
    copy_complex(&out->a1_prime_re, &out->a1_prime_im, d.a1_prime);
    copy_complex(&out->a2_at_0_re, &out->a2_at_0_im, d.a2_at_0);
    copy_complex(&out->a11_re, &out->a11_im, d.a11);
    copy_complex(&out->a2_prime_0_re, &out->a2_prime_0_im, d.a2_prime_0);
    out->n_grid = d.k_grid.size();
  });
}

nmkdv_status nmkdv_spectral_eval(const nmkdv_spectral* sp, double k, double out[10]) {
  return guarded([&] {
    const auto& f = *sp->d.functions;
    Complex a1 = f.a1(k), a2 = f.a2(k), b = f.b(k);
    Complex r1 = f.r1(k), r2 = f.r2(k);
    Complex vals[5] = {a1, a2, b, r1, r2};
    for (int i = 0; i < 5; ++i) {
      out[2 * i] = vals[i].real();
      out[2 * i + 1] = vals[i].imag();
    }
  });
}

nmkdv_status nmkdv_kappa_by_formula(const nmkdv_spectral* sp, double* kappa,
                                    double* imag_residual) {
  return guarded([&] {
    auto r = kappa_by_formula(*sp->d.functions, sp->d.case_tag, sp->d.options.quad);
    *kappa = r.kappa;
    *imag_residual = r.imag_residual;
  });
}

nmkdv_status nmkdv_verify_identities(const nmkdv_spectral* sp, nmkdv_identity_report* out) {
  return guarded([&] {
    auto rep = verify_scattering_identities(sp->d.samples, sp->d.sigma);
    out->det_s = rep.det_s;
    out->b_symmetry = rep.b_symmetry;
    out->a1_symmetry = rep.a1_symmetry;
    out->a2_symmetry = rep.a2_symmetry;
    out->unit_relation = rep.unit_relation;
    out->large_k_a = rep.large_k_a;
    out->large_k_b = rep.large_k_b;
  });
}

nmkdv_status nmkdv_spectral_write_csv(const nmkdv_spectral* sp, const char* path,
                                      const char* const* metadata, size_t n_metadata) {
  return guarded([&] { write_spectral_csv(sp->d, path, meta_vec(metadata, n_metadata)); });
}

/* delta -------------------------------------------------------------- */

nmkdv_status nmkdv_delta_build(const nmkdv_spectral* sp, double xi, nmkdv_delta** out) {
  return guarded([&] {
    DeltaOptions opt;
    opt.quad = sp->d.options.quad;
    *out = new nmkdv_delta{DeltaCache::build(sp->d, xi, opt)};
  });
}
void nmkdv_delta_free(nmkdv_delta* d) { delete d; }

nmkdv_status nmkdv_delta_get_info(const nmkdv_delta* d, nmkdv_delta_info* out) {
  return guarded([&] {
    const DeltaCache& c = d->c;
    out->xi = c.xi();
    out->k0 = c.k0();
    copy_complex(&out->nu_re, &out->nu_im, c.nu());
    out->Delta = c.Delta();
    copy_complex(&out->delta0_re, &out->delta0_im, c.delta_at_0());
    copy_complex(&out->delta_ikappa_re, &out->delta_ikappa_im, c.delta_at_ikappa());
    copy_complex(&out->chi_re, &out->chi_im, c.chi_at_minus_k0());
    copy_complex(&out->chi_hat_re, &out->chi_hat_im, c.chi_hat_at_minus_k0());
  });
}

nmkdv_status nmkdv_delta_eval(const nmkdv_delta* d, double k_re, double k_im, int side,
                              double out[2]) {
  return guarded([&] {
    Complex v = (side == 0) ? d->c.delta(Complex(k_re, k_im))
                            : d->c.delta_boundary(k_re, side);
    out[0] = v.real();
    out[1] = v.imag();
  });
}

nmkdv_status nmkdv_delta_write_jsonl(const nmkdv_delta* const* caches, size_t n,
                                     const char* path) {
  return guarded([&] {
    std::vector<std::string> lines;
    for (size_t i = 0; i < n; ++i) lines.push_back(delta_jsonl_line(caches[i]->c));
    write_text_file(path, lines);
  });
}

/* soliton / fields ---------------------------------------------------- */

nmkdv_status nmkdv_soliton_eval(double A, int gamma0, double x, double t, double* u) {
  return guarded([&] { *u = one_soliton({A, gamma0}, x, t); });
}

nmkdv_status nmkdv_soliton_field(double A, int gamma0, double x_max, double hx, double t_max,
                                 double ht, nmkdv_field** out) {
  return guarded([&] {
    SolitonParams p{A, gamma0};
    *out = new nmkdv_field{
        FieldGrid::sample([&](double x, double t) { return one_soliton(p, x, t); }, x_max, hx,
                          t_max, ht)};
  });
}

nmkdv_status nmkdv_field_read_csv(const char* path, nmkdv_field** out) {
  return guarded([&] { *out = new nmkdv_field{FieldGrid::read_csv(path)}; });
}
nmkdv_status nmkdv_field_write_csv(const nmkdv_field* f, const char* path,
                                   const char* const* metadata, size_t n_metadata) {
  return guarded([&] { f->g.write_csv(path, meta_vec(metadata, n_metadata)); });
}
void nmkdv_field_free(nmkdv_field* f) { delete f; }

nmkdv_status nmkdv_field_dims(const nmkdv_field* f, size_t* nt, size_t* nx) {
  return guarded([&] {
    *nt = f->g.nt();
    *nx = f->g.nx();
  });
}
nmkdv_status nmkdv_field_get(const nmkdv_field* f, size_t it, size_t ix, double* u) {
  return guarded([&] {
    require(it < f->g.nt() && ix < f->g.nx(), Errc::invalid_argument, "field index out of range");
    *u = f->g.at(it, ix);
  });
}

/* residual / boundary -------------------------------------------------- */

nmkdv_status nmkdv_pde_residual(const nmkdv_field* f, int sigma, nmkdv_residual_stats* out,
                                nmkdv_field** residual_or_null) {
  return guarded([&] {
    auto res = pde_residual(f->g, sigma);
    out->max_abs = res.max_abs;
    out->rms = res.rms;
    out->n_interior = res.residual.u.size();
    if (residual_or_null) *residual_or_null = new nmkdv_field{std::move(res.residual)};
  });
}

nmkdv_status nmkdv_boundary_check(const nmkdv_field* f, double A, nmkdv_boundary_stats* out) {
  return guarded([&] {
    auto rep = boundary_check(f->g, A);
    out->right_max_gap = rep.right_max;
    out->left_max_gap = rep.left_max;
  });
}

/* sectors / asymptotics ------------------------------------------------ */

const char* nmkdv_sector_name(nmkdv_sector s) { return sector_name(Sector(int(s))); }

nmkdv_status nmkdv_classify_sector(double x, double t, double kappa, nmkdv_sector* out) {
  return guarded([&] { *out = nmkdv_sector(int(classify_sector(x, t, kappa))); });
}

nmkdv_status nmkdv_asym_eval(const nmkdv_spectral* sp, const nmkdv_delta* cache, double x,
                             double t, const nmkdv_asym_options* opt, nmkdv_asym_result* out) {
  return guarded([&] {
    AsymptoticResult r =
        evaluate_asym(sp->d, cache ? &cache->c : nullptr, x, t, asym_options(opt));
    out->sector = int(r.sector);
    out->u_leading = r.u_leading;
    out->u_subleading = r.u_subleading;
    out->u_total = r.u_total;
    out->error_exponent = r.error_exponent;
    std::snprintf(out->error_order, sizeof(out->error_order), "%s", r.error_order.c_str());
    out->k0 = r.k0;
    out->eta = r.eta;
    out->rho = r.rho;
    out->tau = r.tau;
    out->alpha = r.alpha;
    out->kappa_delta = r.kappa_delta;
    out->epsilon = r.epsilon;
    copy_complex(&out->nu_re, &out->nu_im, r.nu);
    copy_complex(&out->phi0_re, &out->phi0_im, r.phi0);
    copy_complex(&out->beta_re, &out->beta_im, r.beta);
    copy_complex(&out->gamma_re, &out->gamma_im, r.gamma);
    copy_complex(&out->q1_re, &out->q1_im, r.q1);
    copy_complex(&out->q2_re, &out->q2_im, r.q2);
    copy_complex(&out->c1_re, &out->c1_im, r.C1);
    copy_complex(&out->c2_re, &out->c2_im, r.C2);
  });
}

nmkdv_status nmkdv_asym_sweep_csv(const nmkdv_spectral* sp, const double* xs, size_t n_x,
                                  const double* ts, size_t n_t, const nmkdv_asym_options* opt,
                                  const char* path, const char* const* metadata,
                                  size_t n_metadata) {
  return guarded([&] {
    std::vector<double> x(xs, xs + n_x), t(ts, ts + n_t);
    write_asym_sweep_csv(sp->d, x, t, asym_options(opt), path, meta_vec(metadata, n_metadata));
  });
}

/* validation suite ------------------------------------------------------ */

nmkdv_status nmkdv_validate(const char* report_path, int* n_failed) {
  return guarded([&] {
    auto report = run_validation_suite();
    *n_failed = report.failures;
    if (report_path) write_text_file(report_path, report.lines());
  });
}

}  // extern "C"
