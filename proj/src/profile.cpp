#include "profile.hpp"

#include <algorithm>
#include <cmath>

#include "dataio.hpp"

namespace nmkdv {

namespace {

void sample_profile(StepProfile& p) {
  size_t n = size_t(std::llround(2.0 * p.support / p.sampling_step)) + 1;
  p.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    double x = -p.support + double(i) * p.sampling_step;
    p.samples[i] = p.analytic ? p.analytic(x) : 0.0;
  }
}

void add_break(std::vector<double>& breaks, double x, double support) {
  if (std::abs(x) < support) breaks.push_back(x);
}

void finish_breaks(StepProfile& p, std::vector<double> candidates) {
  // U(x) couples u0(x) and u0(-x), so every discontinuity mirrors.
  std::vector<double> all;
  for (double d : candidates) {
    add_break(all, d, p.support);
    add_break(all, -d, p.support);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-14; }),
            all.end());
  p.breakpoints = std::move(all);
}

}  // namespace

double StepProfile::perturbation(double x) const {
  if (std::abs(x) > support) return 0.0;
  if (analytic) return analytic(x);
  if (samples.empty()) return 0.0;
  // Catmull-Rom on the uniform sample grid.
  double u = (x + support) / sampling_step;
  long i = std::clamp<long>(long(std::floor(u)), 0, long(samples.size()) - 2);
  double f = u - double(i);
  auto at = [&](long j) {
    return samples[size_t(std::clamp<long>(j, 0, long(samples.size()) - 1))];
  };
  double pm1 = at(i - 1), p0 = at(i), p1 = at(i + 1), p2 = at(i + 2);
  return p0 + 0.5 * f * (p1 - pm1 + f * (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2 +
                                         f * (3.0 * (p0 - p1) + p2 - pm1)));
}

StepProfile StepProfile::pure_step(double A, int sigma) {
  require(A >= 0.0, Errc::invalid_argument, "background amplitude must be >= 0");
  require(sigma == 1 || sigma == -1, Errc::invalid_argument, "sigma must be +1 or -1");
  StepProfile p;
  p.background = A;
  p.sigma = sigma;
  p.support = 1.0;
  p.name = "pure-step";
  sample_profile(p);
  finish_breaks(p, {0.0});
  return p;
}

StepProfile StepProfile::smooth_step(double A, double width, int sigma) {
  require(A > 0.0 && width > 0.0, Errc::invalid_argument, "need A > 0 and width > 0");
  require(sigma == 1 || sigma == -1, Errc::invalid_argument, "sigma must be +1 or -1");
  StepProfile p;
  p.background = A;
  p.sigma = sigma;
  p.support = 6.0 * width;
  p.name = "smooth-step";
  double N = p.support;
  p.analytic = [A, width, N](double x) -> double {
    if (std::abs(x) > N) return 0.0;
    double smooth = 0.5 * A * (1.0 + std::tanh(x / width));
    return smooth - (x > 0.0 ? A : 0.0);
  };
  sample_profile(p);
  finish_breaks(p, {0.0, p.support});
  return p;
}

StepProfile StepProfile::bump_step(double A, double height, double center, double width,
                                   int sigma) {
  require(A > 0.0 && width > 0.0, Errc::invalid_argument, "need A > 0 and width > 0");
  require(sigma == 1 || sigma == -1, Errc::invalid_argument, "sigma must be +1 or -1");
  StepProfile p;
  p.background = A;
  p.sigma = sigma;
  p.support = std::max(std::abs(center) + 4.0 * width, 1.0);
  p.name = "bump-step";
  p.analytic = [height, center, width](double x) -> double {
    double d = (x - center) / width;
    if (std::abs(d) > 4.0) return 0.0;
    return height * std::exp(-d * d);
  };
  sample_profile(p);
  finish_breaks(p, {0.0, center - 4.0 * width, center + 4.0 * width, p.support});
  return p;
}

StepProfile StepProfile::from_csv(const std::string& path) {
  StepProfile p;
  p.name = path;
  std::vector<double> xs, ps;
  for (const auto& line : read_text_file(path)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto key_beg = line.find_first_not_of("# \t");
      std::string key = line.substr(key_beg, line.find_last_not_of(" \t", eq - 1) - key_beg + 1);
      if (key == "A") p.background = std::stod(line.substr(eq + 1));
      else if (key == "sigma") p.sigma = int(std::stod(line.substr(eq + 1)));
      else if (key == "N") p.support = std::stod(line.substr(eq + 1));
      continue;  // other metadata keys are informational
    }
    if (line.rfind("x,", 0) == 0) continue;  // header
    auto row = parse_csv_row(line);
    require(row.size() == 2, Errc::io_failure, "profile rows must be 'x,p'");
    xs.push_back(row[0]);
    ps.push_back(row[1]);
  }
  require(xs.size() >= 2, Errc::io_failure, "profile needs at least two samples");
  p.sampling_step = xs[1] - xs[0];
  for (size_t i = 1; i < xs.size(); ++i) {
    require(std::abs(xs[i] - xs[i - 1] - p.sampling_step) < 1e-9, Errc::io_failure,
            "profile samples must be uniform");
  }
  require(std::abs(xs.front() + p.support) < 1e-9 && std::abs(xs.back() - p.support) < 1e-9,
          Errc::io_failure, "profile samples must cover [-N, N]");
  p.samples = std::move(ps);
  std::vector<double> breaks = {0.0, p.support};
  StepProfile out = p;
  finish_breaks(out, breaks);
  return out;
}

void StepProfile::write_csv(const std::string& path) const {
  std::vector<std::string> lines = metadata_block({
      "A = " + format_double(background),
      "sigma = " + format_double(sigma),
      "N = " + format_double(support),
      "preset = " + name,
  });
  lines.push_back("x,p");
  for (size_t i = 0; i < samples.size(); ++i) {
    double x = -support + double(i) * sampling_step;
    lines.push_back(csv_row({x, samples[i]}));
  }
  write_text_file(path, lines);
}

}  // namespace nmkdv
