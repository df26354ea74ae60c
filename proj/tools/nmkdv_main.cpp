// Command-line front end. Talks to the library exclusively through the C API.

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nmkdv.h"

namespace {

struct Range {
  double lo = 0.0, hi = 0.0, step = 1.0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Range parse_range(const std::string& text) {
  Range r;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &r.lo, &r.hi, &r.step) != 3 || r.step <= 0.0 ||
      r.hi < r.lo) {
    throw CLI::ValidationError("range", "expected lo:hi:step with step > 0, got '" + text + "'");
  }
  return r;
}

std::vector<double> expand(const Range& r) {
  std::vector<double> out;
  long n = std::lround((r.hi - r.lo) / r.step);
  for (long i = 0; i <= n; ++i) out.push_back(r.lo + double(i) * r.step);
  return out;
}

int fail_status(const char* what, nmkdv_status st) {
  std::fprintf(stderr, "error: %s: %s\n", what, nmkdv_strerror(st));
  return 2;
}

#define CHECK(call)                                 \
  do {                                              \
    nmkdv_status st_ = (call);                      \
    if (st_ != NMKDV_OK) return fail_status(#call, st_); \
  } while (0)

struct ProfileArgs {
  std::string preset = "pure-step";
  double A = 1.0;
  double width = 0.5;
  double height = 0.2;
  double center = 0.5;

  void attach(CLI::App* cmd) {
    cmd->add_option("--profile", preset,
                    "pure-step | smooth-step | bump-step | path to a profile CSV");
    cmd->add_option("--A", A, "background amplitude");
    cmd->add_option("--width", width, "smooth/bump width");
    cmd->add_option("--height", height, "bump height");
    cmd->add_option("--center", center, "bump center");
  }

  nmkdv_profile* make() const {
    nmkdv_profile* p = nullptr;
    nmkdv_status st;
    if (preset == "pure-step") {
      st = nmkdv_profile_pure_step(A, &p);
    } else if (preset == "smooth-step") {
      st = nmkdv_profile_smooth_step(A, width, &p);
    } else if (preset == "bump-step") {
      st = nmkdv_profile_bump_step(A, height, center, width, &p);
    } else {
      st = nmkdv_profile_read_csv(preset.c_str(), &p);
    }
    if (st != NMKDV_OK) {
      std::fprintf(stderr, "error: profile '%s': %s\n", preset.c_str(), nmkdv_strerror(st));
      return nullptr;
    }
    return p;
  }

  void echo(std::vector<std::string>& meta) const {
    meta.push_back("profile = " + preset);
    meta.push_back("A = " + num(A));
    if (preset == "smooth-step" || preset == "bump-step") {
      meta.push_back("width = " + num(width));
    }
    if (preset == "bump-step") {
      meta.push_back("height = " + num(height));
      meta.push_back("center = " + num(center));
    }
  }
};

struct GridArgs {
  nmkdv_grid_options opt;
  GridArgs() { nmkdv_grid_options_default(&opt); }
  void attach(CLI::App* cmd) {
    cmd->add_option("--k_min", opt.k_min, "smallest |k| on the grid");
    cmd->add_option("--k_max", opt.k_max, "largest |k| on the grid");
    cmd->add_option("--n_k", opt.n_k, "grid size (even)");
    cmd->add_option("--ode_rtol", opt.ode_rtol, "Jost ODE relative tolerance");
    cmd->add_option("--quad_tol", opt.quad_tol, "absolute quadrature tolerance");
    cmd->add_option("--eps_case", opt.eps_case, "Case II classification threshold");
    cmd->add_flag("--skip_zero_count", [this](size_t) { opt.verify_unique_zero = 0; },
                  "skip the argument-principle uniqueness check");
  }
  void echo(std::vector<std::string>& meta) const {
    meta.push_back("k_min = " + num(opt.k_min));
    meta.push_back("k_max = " + num(opt.k_max));
    meta.push_back("n_k = " + std::to_string(opt.n_k));
    meta.push_back("ode_rtol = " + num(opt.ode_rtol));
    meta.push_back("quad_tol = " + num(opt.quad_tol));
    meta.push_back("eps_case = " + num(opt.eps_case));
  }
};

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

void base_metadata(std::vector<std::string>& meta) {
  meta.push_back(std::string("nmkdv_version = ") + nmkdv_version());
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// Expands 'key = value' lines from a flat config file into option tokens,
// inserted before the explicit flags so the command line wins.
bool expand_config(std::vector<std::string>& args) {
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--config") continue;
    if (i + 1 >= args.size()) {
      std::fprintf(stderr, "error: --config needs a file path\n");
      return false;
    }
    std::string path = args[i + 1];
    std::FILE* in = std::fopen(path.c_str(), "rb");
    if (!in) {
      std::fprintf(stderr, "error: cannot read config '%s'\n", path.c_str());
      return false;
    }
    std::vector<std::string> injected;
    char line[512];
    while (std::fgets(line, sizeof(line), in)) {
      std::string l = trim(line);
      while (!l.empty() && (l.back() == '\n' || l.back() == '\r')) l.pop_back();
      if (l.empty() || l[0] == '#') continue;
      auto eq = l.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: config line is not 'key = value': %s\n", l.c_str());
        std::fclose(in);
        return false;
      }
      std::string key = trim(l.substr(0, eq));
      std::string value = trim(l.substr(eq + 1));
      injected.push_back("--" + key);
      if (value == "true") continue;  // flag
      if (value == "false") {
        injected.pop_back();
        continue;
      }
      injected.push_back(value);
    }
    std::fclose(in);
    args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
    args.insert(args.begin() + long(i), injected.begin(), injected.end());
    return true;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (!expand_config(args)) return 2;

  CLI::App app{"numerical laboratory for the focusing reverse-space-time MKdV equation"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.footer("Any option can also come from --config FILE with flat 'key = value' lines.");

  // ---- scatter ----
  auto* scatter = app.add_subcommand("scatter", "direct scattering sweep, writes spectral CSV");
  ProfileArgs scatter_profile;
  GridArgs scatter_grid;
  std::string scatter_out = "spectral.csv";
  scatter_profile.attach(scatter);
  scatter_grid.attach(scatter);
  scatter->add_option("--output", scatter_out, "output CSV path");

  // ---- kappa ----
  auto* kappa = app.add_subcommand("kappa", "discrete eigenvalue by root search and by formula");
  ProfileArgs kappa_profile;
  GridArgs kappa_grid;
  bool kappa_fixture = false;
  int kappa_gamma0 = -1;
  kappa_profile.attach(kappa);
  kappa_grid.attach(kappa);
  kappa->add_flag("--fixture", kappa_fixture, "use the reflectionless fixture instead");
  kappa->add_option("--gamma0", kappa_gamma0, "fixture gamma0 (+1 or -1)");

  // ---- soliton ----
  auto* soliton = app.add_subcommand("soliton", "emit the one-soliton field grid");
  double sol_A = 2.0;
  int sol_gamma0 = -1;
  std::string sol_x = "-10:10:0.01", sol_t = "-1:1:0.01", sol_out = "soliton.csv";
  soliton->add_option("--A", sol_A, "amplitude");
  soliton->add_option("--gamma0", sol_gamma0, "+1 or -1");
  soliton->add_option("--x", sol_x, "x range lo:hi:step (symmetric)");
  soliton->add_option("--t", sol_t, "t range lo:hi:step (symmetric)");
  soliton->add_option("--output", sol_out, "output CSV path");

  // ---- asym ----
  auto* asym = app.add_subcommand("asym", "evaluate the sector asymptotics on an (x,t) set");
  ProfileArgs asym_profile;
  GridArgs asym_grid;
  bool asym_fixture = false;
  int asym_gamma0 = -1;
  std::string asym_x, asym_t, asym_out = "asym.csv";
  double asym_xi = 0.0, asym_alpha = 0.0, asym_kd = 0.0;
  bool have_xi = false;
  asym_profile.attach(asym);
  asym_grid.attach(asym);
  asym->add_flag("--fixture", asym_fixture, "use the reflectionless fixture");
  asym->add_option("--gamma0", asym_gamma0, "fixture gamma0");
  asym->add_option("--x", asym_x, "x range lo:hi:step");
  asym->add_option("--t", asym_t, "t range lo:hi:step")->required();
  asym->add_option("--xi", asym_xi, "fixed ray x/(12 t); overrides --x")
      ->each([&](const std::string&) { have_xi = true; });
  asym->add_option("--alpha", asym_alpha, "error-order alpha in (lambda, 1)");
  asym->add_option("--kappa_delta", asym_kd, "kappa_delta in (0, kappa)");
  asym->add_option("--output", asym_out, "output CSV path");

  // ---- residual ----
  auto* residual = app.add_subcommand("residual", "PDE residual statistics for a field CSV");
  std::string res_in, res_out;
  int res_sigma = 1;
  double res_boundary_A = 0.0;
  residual->add_option("--input", res_in, "field CSV path")->required();
  residual->add_option("--sigma", res_sigma, "+1 (focusing) or -1");
  residual->add_option("--output", res_out, "optional interior-residual CSV path");
  residual->add_option("--boundary_A", res_boundary_A,
                       "also report boundary gaps against this amplitude");

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  std::string val_out;
  validate->add_option("--output", val_out, "write the report here as well as stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (scatter->parsed()) {
    nmkdv_profile* p = scatter_profile.make();
    if (!p) return 2;
    nmkdv_spectral* sp = nullptr;
    CHECK(nmkdv_scatter(p, &scatter_grid.opt, &sp));
    std::vector<std::string> meta;
    base_metadata(meta);
    scatter_profile.echo(meta);
    scatter_grid.echo(meta);
    auto metac = c_strings(meta);
    CHECK(nmkdv_spectral_write_csv(sp, scatter_out.c_str(), metac.data(), metac.size()));
    nmkdv_spectral_info info;
    CHECK(nmkdv_spectral_get_info(sp, &info));
    std::printf("wrote %s  (n=%zu, kappa=%.12g, gamma0=%+d, case=%s)\n", scatter_out.c_str(),
                info.n_grid, info.kappa, info.gamma0, info.case_tag == 1 ? "I" : "II");
    nmkdv_spectral_free(sp);
    nmkdv_profile_free(p);
    return 0;
  }

  if (kappa->parsed()) {
    nmkdv_spectral* sp = nullptr;
    nmkdv_profile* p = nullptr;
    if (kappa_fixture) {
      CHECK(nmkdv_spectral_reflectionless(kappa_profile.A, kappa_gamma0, &sp));
    } else {
      p = kappa_profile.make();
      if (!p) return 2;
      CHECK(nmkdv_scatter(p, &kappa_grid.opt, &sp));
    }
    nmkdv_spectral_info info;
    CHECK(nmkdv_spectral_get_info(sp, &info));
    double kf = 0.0, resid = 0.0;
    CHECK(nmkdv_kappa_by_formula(sp, &kf, &resid));
    double reldiff = std::abs(info.kappa - kf) / info.kappa;
    std::printf("kappa_root=%.12g kappa_formula=%.12g reldiff=%.3e imag_residual=%.3e\n",
                info.kappa, kf, reldiff, resid);
    nmkdv_spectral_free(sp);
    nmkdv_profile_free(p);
    return 0;
  }

  if (soliton->parsed()) {
    Range rx = parse_range(sol_x), rt = parse_range(sol_t);
    if (std::abs(rx.lo + rx.hi) > 1e-12 || std::abs(rt.lo + rt.hi) > 1e-12) {
      std::fprintf(stderr, "error: field grids must be symmetric (lo = -hi)\n");
      return 2;
    }
    nmkdv_field* f = nullptr;
    CHECK(nmkdv_soliton_field(sol_A, sol_gamma0, rx.hi, rx.step, rt.hi, rt.step, &f));
    std::vector<std::string> meta;
    base_metadata(meta);
    meta.push_back("A = " + num(sol_A));
    meta.push_back("gamma0 = " + std::to_string(sol_gamma0));
    meta.push_back("x = " + sol_x);
    meta.push_back("t = " + sol_t);
    auto metac = c_strings(meta);
    CHECK(nmkdv_field_write_csv(f, sol_out.c_str(), metac.data(), metac.size()));
    size_t nt = 0, nx = 0;
    CHECK(nmkdv_field_dims(f, &nt, &nx));
    std::printf("wrote %s  (%zu x %zu samples)\n", sol_out.c_str(), nt, nx);
    nmkdv_field_free(f);
    return 0;
  }

  if (asym->parsed()) {
    nmkdv_spectral* sp = nullptr;
    nmkdv_profile* p = nullptr;
    if (asym_fixture) {
      CHECK(nmkdv_spectral_reflectionless(asym_profile.A, asym_gamma0, &sp));
    } else {
      p = asym_profile.make();
      if (!p) return 2;
      CHECK(nmkdv_scatter(p, &asym_grid.opt, &sp));
    }
    std::vector<double> ts = expand(parse_range(asym_t));
    std::vector<double> xs;
    if (have_xi) {
      // ray sweep: one x per t
      for (double t : ts) xs.push_back(12.0 * t * asym_xi);
      std::vector<std::string> meta;
      base_metadata(meta);
      asym_profile.echo(meta);
      meta.push_back("xi = " + num(asym_xi));
      meta.push_back("t = " + asym_t);
      if (asym_alpha > 0.0) meta.push_back("alpha = " + num(asym_alpha));
      if (asym_kd > 0.0) meta.push_back("kappa_delta = " + num(asym_kd));
      nmkdv_asym_options opt{asym_alpha, asym_kd};
      std::vector<std::string> lines;
      // ray sweeps are emitted point by point through the single-point API
      nmkdv_delta* cache = nullptr;
      if (asym_xi < 0.0) CHECK(nmkdv_delta_build(sp, asym_xi, &cache));
      std::FILE* out = std::fopen(asym_out.c_str(), "wb");
      if (!out) return fail_status("fopen", NMKDV_E_IO);
      for (const auto& m : meta) std::fprintf(out, "# %s\n", m.c_str());
      std::fprintf(out, "x,t,xi,sector,u_leading,u_subleading,u_total,error_order_exponent\n");
      for (size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] == 0.0) continue;
        nmkdv_asym_result r;
        nmkdv_status st = nmkdv_asym_eval(sp, cache, xs[i], ts[i], &opt, &r);
        if (st != NMKDV_OK) {
          std::fclose(out);
          return fail_status("nmkdv_asym_eval", st);
        }
        char cols[8][32];
        double vals[7] = {xs[i], ts[i], asym_xi, r.u_leading, r.u_subleading, r.u_total,
                          r.error_exponent};
        for (int c = 0; c < 7; ++c) nmkdv_format_double(vals[c], cols[c], sizeof(cols[c]));
        std::fprintf(out, "%s,%s,%s,%s,%s,%s,%s,%s\n", cols[0], cols[1], cols[2],
                     nmkdv_sector_name(nmkdv_sector(r.sector)), cols[3], cols[4], cols[5],
                     cols[6]);
      }
      std::fclose(out);
      nmkdv_delta_free(cache);
      std::printf("wrote %s  (%zu ray points)\n", asym_out.c_str(), ts.size());
    } else {
      if (asym_x.empty()) {
        std::fprintf(stderr, "error: asym needs --x or --xi\n");
        return 2;
      }
      xs = expand(parse_range(asym_x));
      std::vector<std::string> meta;
      base_metadata(meta);
      asym_profile.echo(meta);
      meta.push_back("x = " + asym_x);
      meta.push_back("t = " + asym_t);
      if (asym_alpha > 0.0) meta.push_back("alpha = " + num(asym_alpha));
      if (asym_kd > 0.0) meta.push_back("kappa_delta = " + num(asym_kd));
      nmkdv_asym_options opt{asym_alpha, asym_kd};
      auto metac = c_strings(meta);
      CHECK(nmkdv_asym_sweep_csv(sp, xs.data(), xs.size(), ts.data(), ts.size(), &opt,
                                 asym_out.c_str(), metac.data(), metac.size()));
      std::printf("wrote %s  (%zu x %zu sweep)\n", asym_out.c_str(), xs.size(), ts.size());
    }
    nmkdv_spectral_free(sp);
    nmkdv_profile_free(p);
    return 0;
  }

  if (residual->parsed()) {
    nmkdv_field* f = nullptr;
    CHECK(nmkdv_field_read_csv(res_in.c_str(), &f));
    nmkdv_residual_stats stats;
    nmkdv_field* rgrid = nullptr;
    CHECK(nmkdv_pde_residual(f, res_sigma, &stats, res_out.empty() ? nullptr : &rgrid));
    std::printf("residual: max_abs=%.6e rms=%.6e interior=%zu\n", stats.max_abs, stats.rms,
                stats.n_interior);
    if (!res_out.empty()) {
      std::vector<std::string> meta;
      base_metadata(meta);
      meta.push_back("input = " + res_in);
      meta.push_back("sigma = " + std::to_string(res_sigma));
      auto metac = c_strings(meta);
      CHECK(nmkdv_field_write_csv(rgrid, res_out.c_str(), metac.data(), metac.size()));
      std::printf("wrote %s\n", res_out.c_str());
    }
    if (res_boundary_A > 0.0) {
      nmkdv_boundary_stats bs;
      CHECK(nmkdv_boundary_check(f, res_boundary_A, &bs));
      std::printf("boundary: right_gap=%.6e left_gap=%.6e (A=%g)\n", bs.right_max_gap,
                  bs.left_max_gap, res_boundary_A);
    }
    nmkdv_field_free(rgrid);
    nmkdv_field_free(f);
    return 0;
  }

  if (validate->parsed()) {
    int failures = 0;
    const char* path = val_out.empty() ? "nmkdv_validate_report.txt" : val_out.c_str();
    CHECK(nmkdv_validate(path, &failures));
    // echo the report
    std::FILE* in = std::fopen(path, "rb");
    if (in) {
      char buf[4096];
      size_t n;
      while ((n = std::fread(buf, 1, sizeof(buf), in)) > 0) std::fwrite(buf, 1, n, stdout);
      std::fclose(in);
    }
    return failures == 0 ? 0 : 1;
  }

  return 2;
}
