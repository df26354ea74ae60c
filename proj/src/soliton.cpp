#include "soliton.hpp"

#include <cmath>

namespace nmkdv {

double one_soliton(const SolitonParams& p, double x, double t) {
  require(p.A > 0.0, Errc::invalid_argument, "soliton amplitude must be positive");
  require(p.gamma0 == 1 || p.gamma0 == -1, Errc::invalid_argument, "gamma0 must be +1 or -1");
  double w = -p.A * x + p.A * p.A * p.A * t;
  if (w > 700.0) return 0.0;   // exp(w) dominates: u -> 0
  if (w < -700.0) return p.A;  // exp(w) -> 0: u -> A
  if (p.gamma0 == 1) {
    require(std::abs(w) > 1e-8, Errc::on_singular_line,
            "one-soliton with gamma0 = +1 blows up on t = x/A^2");
  }
  return p.A / (1.0 - double(p.gamma0) * std::exp(w));
}

}  // namespace nmkdv
