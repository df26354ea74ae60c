#include "validation.hpp"

#include <cmath>

#include "dataio.hpp"
#include "parallel.hpp"

namespace nmkdv {

namespace {

void check_axis(const std::vector<double>& v, const char* name) {
  require(v.size() >= 7, Errc::grid_too_small, std::string(name) + " axis needs >= 7 points");
  double h = v[1] - v[0];
  require(h > 0.0, Errc::invalid_argument, "axis must ascend");
  double scale = std::max(1.0, std::abs(v.back()));
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    require(std::abs(v[i + 1] - v[i] - h) <= 1e-9 * scale, Errc::asymmetric_grid,
            std::string(name) + " axis is not uniform");
  }
  for (size_t i = 0; i < v.size(); ++i) {
    require(std::abs(v[i] + v[v.size() - 1 - i]) <= 1e-9 * scale, Errc::asymmetric_grid,
            std::string(name) + " axis is not symmetric about 0");
  }
}

}  // namespace

void FieldGrid::check_symmetric() const {
  check_axis(x_values, "x");
  check_axis(t_values, "t");
  require(u.size() == nx() * nt(), Errc::invalid_argument, "field size mismatch");
}

FieldGrid FieldGrid::sample(const std::function<double(double, double)>& f, double x_max,
                            double hx, double t_max, double ht) {
  require(x_max > 0.0 && t_max > 0.0 && hx > 0.0 && ht > 0.0, Errc::invalid_argument,
          "sample needs positive extents and steps");
  FieldGrid g;
  long mx = std::lround(x_max / hx), mt = std::lround(t_max / ht);
  for (long i = -mx; i <= mx; ++i) g.x_values.push_back(double(i) * hx);
  for (long j = -mt; j <= mt; ++j) g.t_values.push_back(double(j) * ht);
  g.u.resize(g.nx() * g.nt());
  parallel_for(g.nt(), [&](size_t it) {
    for (size_t ix = 0; ix < g.nx(); ++ix) {
      g.u[it * g.nx() + ix] = f(g.x_values[ix], g.t_values[it]);
    }
  });
  g.check_symmetric();
  return g;
}

ResidualResult pde_residual(const FieldGrid& field, int sigma) {
  field.check_symmetric();
  const size_t bx = 3, bt = 2;
  require(field.nx() > 2 * bx + 1 && field.nt() > 2 * bt + 1, Errc::grid_too_small,
          "grid too small for the interior stencils");

  ResidualResult out;
  FieldGrid& r = out.residual;
  r.x_values.assign(field.x_values.begin() + bx, field.x_values.end() - bx);
  r.t_values.assign(field.t_values.begin() + bt, field.t_values.end() - bt);
  r.u.resize(r.nx() * r.nt());

  const double hx = field.dx(), ht = field.dt();
  const size_t nx = field.nx();
  std::vector<double> row_max(r.nt(), 0.0), row_sq(r.nt(), 0.0);

  parallel_for(r.nt(), [&](size_t jt) {
    size_t it = jt + bt;
    double local_max = 0.0, local_sq = 0.0;
    for (size_t jx = 0; jx < r.nx(); ++jx) {
      size_t ix = jx + bx;
      auto ux = [&](long d) { return field.u[it * nx + (ix + size_t(long(d)))]; };
      auto ut = [&](long d) { return field.u[(it + size_t(long(d))) * nx + ix]; };
      double d_t = (ut(-2) - 8.0 * ut(-1) + 8.0 * ut(1) - ut(2)) / (12.0 * ht);
      double d_x = (ux(-2) - 8.0 * ux(-1) + 8.0 * ux(1) - ux(2)) / (12.0 * hx);
      double d_xxx = (ux(-3) - 8.0 * ux(-2) + 13.0 * ux(-1) - 13.0 * ux(1) + 8.0 * ux(2) -
                      ux(3)) /
                     (8.0 * hx * hx * hx);
      double res = d_t + 6.0 * double(sigma) * field.at(it, ix) * field.mirror(it, ix) * d_x +
                   d_xxx;
      r.u[jt * r.nx() + jx] = res;
      local_max = std::max(local_max, std::abs(res));
      local_sq += res * res;
    }
    row_max[jt] = local_max;
    row_sq[jt] = local_sq;
  });
  double sq = 0.0;
  for (size_t jt = 0; jt < r.nt(); ++jt) {
    out.max_abs = std::max(out.max_abs, row_max[jt]);
    sq += row_sq[jt];
  }
  out.rms = std::sqrt(sq / double(r.u.size()));
  return out;
}

BoundaryReport boundary_check(const FieldGrid& field, double A) {
  field.check_symmetric();
  require(field.x_values.back() >= 10.0 / A, Errc::grid_too_narrow,
          "grid must extend to |x| >= 10/A");
  size_t band = std::max<size_t>(1, field.nx() / 10);
  BoundaryReport rep;
  rep.right_gap.resize(field.nt());
  rep.left_gap.resize(field.nt());
  for (size_t it = 0; it < field.nt(); ++it) {
    double rgap = 0.0, lgap = 0.0;
    for (size_t j = 0; j < band; ++j) {
      rgap = std::max(rgap, std::abs(field.at(it, field.nx() - 1 - j) - A));
      lgap = std::max(lgap, std::abs(field.at(it, j)));
    }
    rep.right_gap[it] = rgap;
    rep.left_gap[it] = lgap;
    rep.right_max = std::max(rep.right_max, rgap);
    rep.left_max = std::max(rep.left_max, lgap);
  }
  return rep;
}

FieldGrid FieldGrid::read_csv(const std::string& path) {
  FieldGrid g;
  bool header_seen = false;
  for (const auto& line : read_text_file(path)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      require(line.rfind("t\\x,", 0) == 0, Errc::io_failure,
              "field CSV must start with a 't\\x' header row");
      auto xs = parse_csv_row(line.substr(4));
      g.x_values = xs;
      header_seen = true;
      continue;
    }
    auto row = parse_csv_row(line);
    require(row.size() == g.nx() + 1, Errc::io_failure, "field row width mismatch");
    g.t_values.push_back(row[0]);
    g.u.insert(g.u.end(), row.begin() + 1, row.end());
  }
  require(header_seen, Errc::io_failure, "field CSV missing header");
  g.check_symmetric();
  return g;
}

void FieldGrid::write_csv(const std::string& path, const std::vector<std::string>& metadata) const {
  std::vector<std::string> lines = metadata_block(metadata);
  std::string header = "t\\x";
  for (double x : x_values) {
    header.push_back(',');
    header += format_double(x);
  }
  lines.push_back(header);
  for (size_t it = 0; it < nt(); ++it) {
    std::string row = format_double(t_values[it]);
    for (size_t ix = 0; ix < nx(); ++ix) {
      row.push_back(',');
      row += format_double(at(it, ix));
    }
    lines.push_back(std::move(row));
  }
  write_text_file(path, lines);
}

}  // namespace nmkdv
