#ifndef NMKDV_PROFILE_HPP
#define NMKDV_PROFILE_HPP

// Step-like initial data: pure step background plus a compactly supported
// perturbation, carried both as samples and (for presets) in closed form.

#include <functional>
#include <string>
#include <vector>

#include "nmkdv_types.hpp"

namespace nmkdv {

struct StepProfile {
  double background = 1.0;  // A
  int sigma = +1;
  double support = 1.0;  // N: perturbation vanishes for |x| > N
  double sampling_step = 1e-3;
  std::vector<double> samples;  // p(x) on the uniform grid over [-N, N]
  std::function<double(double)> analytic;  // exact p(x) when available
  std::vector<double> breakpoints;  // discontinuities of x -> U(x), sorted
  std::string name = "custom";

  double perturbation(double x) const;
  double step_background(double x) const { return x > 0.0 ? background : 0.0; }
  double u0(double x) const { return step_background(x) + perturbation(x); }

  static StepProfile pure_step(double A, int sigma = +1);
  static StepProfile smooth_step(double A, double width, int sigma = +1);
  static StepProfile bump_step(double A, double height, double center, double width,
                               int sigma = +1);

  // CSV with '# key = value' metadata lines, then one 'x,p' row per sample.
  static StepProfile from_csv(const std::string& path);
  void write_csv(const std::string& path) const;
};

}  // namespace nmkdv

#endif
