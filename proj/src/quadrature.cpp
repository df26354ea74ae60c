#include "quadrature.hpp"

#include <cmath>
#include <queue>

namespace nmkdv {

ContourSegment ContourSegment::interval(double a, double b) {
  require(a < b, Errc::invalid_argument, "segment endpoints out of order");
  return {Kind::finite_interval, a, b};
}
ContourSegment ContourSegment::ray_plus(double from) {
  return {Kind::ray_to_plus_inf, from, 0.0};
}
ContourSegment ContourSegment::ray_minus(double to) {
  return {Kind::ray_to_minus_inf, 0.0, to};
}

bool ContourSegment::contains(double s) const {
  switch (kind) {
    case Kind::finite_interval: return s > a && s < b;
    case Kind::ray_to_plus_inf: return s > a;
    case Kind::ray_to_minus_inf: return s < b;
  }
  return false;
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
const double kXgk[8] = {0.991455371120812639206854697526329,
                        0.949107912342758524526189684047851,
                        0.864864423359769072789712788640926,
                        0.741531185599394439863864773280788,
                        0.586087235467691130294144838258730,
                        0.405845151377397166906606412076961,
                        0.207784955007898467600689403773245,
                        0.000000000000000000000000000000000};
const double kWgk[8] = {0.022935322010529224963732008058970,
                        0.063092092629978553290700663189204,
                        0.104790010322250183839876322541518,
                        0.140653259715525918745189590510238,
                        0.169004726639267902826583426598550,
                        0.190350578064785409913256402421014,
                        0.204432940075298892414161999234649,
                        0.209482141084727828012999174891714};
const double kWg[4] = {0.129484966168869693270611432679082,
                       0.279705391489276667901467771423780,
                       0.381830050505118944950369775488975,
                       0.417959183673469387755102040816327};

// Globally adaptive: the interval with the worst Gauss-Kronrod discrepancy is
// bisected until the summed estimate meets the tolerance.
struct Worker {
  const Integrand& f;
  const QuadOptions& opt;
  long evals = 0;

  struct Piece {
    double a, b, err;
    Complex val;
    bool frozen;  // at the noise floor or minimal width; splitting won't help
    bool operator<(const Piece& other) const {
      double ea = frozen ? -1.0 : err;
      double eb = other.frozen ? -1.0 : other.err;
      return ea < eb;
    }
  };

  Piece gk15(double a, double b) {
    double hl = 0.5 * (b - a), c = 0.5 * (a + b);
    evals += 15;
    Complex fc = f(c);
    Complex res_g = fc * kWg[3];
    Complex res_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
      double x = hl * kXgk[j];
      Complex f1 = f(c - x), f2 = f(c + x);
      res_k += kWgk[j] * (f1 + f2);
      if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    res_k *= hl;
    res_g *= hl;
    double err = std::abs(res_k - res_g);
    require(std::isfinite(err) && finite(res_k), Errc::invalid_argument,
            "non-finite integrand in quadrature");
    bool frozen = err <= opt.noise_floor || (b - a) <= 1e-14 * std::max(std::abs(a), std::abs(b));
    return {a, b, err, res_k, frozen};
  }

  Complex run(double a, double b) {
    std::priority_queue<Piece> heap;
    heap.push(gk15(a, b));
    double total_err = heap.top().err;
    Complex total_val = heap.top().val;
    while (total_err > opt.abs_tol && !heap.top().frozen) {
      if (evals + 30 > opt.max_evals) {
        if (total_err <= 100.0 * opt.abs_tol) break;  // close enough, stop refining
        fail(Errc::not_converged, "quadrature evaluation budget exceeded");
      }
      Piece worst = heap.top();
      heap.pop();
      double mid = 0.5 * (worst.a + worst.b);
      Piece left = gk15(worst.a, mid);
      Piece right = gk15(mid, worst.b);
      total_err += left.err + right.err - worst.err;
      total_val += left.val + right.val - worst.val;
      heap.push(left);
      heap.push(right);
    }
    return total_val;
  }
};

Complex integrate_interval(const Integrand& f, double a, double b, const QuadOptions& opt) {
  if (a == b) return 0.0;
  Worker w{f, opt};
  return w.run(a, b);
}

double ray_split(double from) {
  return std::max({std::abs(from) * 2.0, from + 10.0, 10.0});
}

// Tail of a ray folded through s = +-1/u; both orientations give +integral.
Complex ray_tail(const Integrand& f, double cut, bool to_plus, const QuadOptions& opt) {
  auto folded = [&](double u) -> Complex {
    double s = 1.0 / u;
    if (!to_plus) s = -s;
    return f(s) / (u * u);
  };
  return integrate_interval(folded, 1e-14, 1.0 / cut, opt);
}

void check_tail_decay(const Integrand& f, bool to_plus) {
  double s1 = to_plus ? 1e4 : -1e4;
  double s2 = to_plus ? 1e5 : -1e5;
  double f1 = std::abs(f(s1)), f2 = std::abs(f(s2));
  if (f1 < 1e-14 && f2 < 1e-14) return;
  // want |f| ~ s^-2; reject anything slower than s^-1.5
  require(f2 < f1 * std::pow(10.0, -1.5) + 1e-14, Errc::non_decaying_tail,
          "ray integrand does not decay like O(s^-2)");
}

}  // namespace

Complex integrate_segment(const Integrand& f, const ContourSegment& seg, const QuadOptions& opt) {
  switch (seg.kind) {
    case ContourSegment::Kind::finite_interval:
      return integrate_interval(f, seg.a, seg.b, opt);
    case ContourSegment::Kind::ray_to_plus_inf: {
      check_tail_decay(f, true);
      double cut = ray_split(seg.a);
      return integrate_interval(f, seg.a, cut, opt) + ray_tail(f, cut, true, opt);
    }
    case ContourSegment::Kind::ray_to_minus_inf: {
      check_tail_decay(f, false);
      double cut = -ray_split(-seg.b);
      return ray_tail(f, -cut, false, opt) + integrate_interval(f, cut, seg.b, opt);
    }
  }
  return 0.0;
}

Complex integrate_contour(const Integrand& f, const Contour& contour, const QuadOptions& opt) {
  Complex sum = 0.0;
  for (const auto& seg : contour) sum += integrate_segment(f, seg, opt);
  return sum;
}

Complex principal_value_integral(const Integrand& f, double pole, const Contour& contour,
                                 const QuadOptions& opt) {
  int pole_seg = -1;
  for (size_t i = 0; i < contour.size(); ++i) {
    if (contour[i].contains(pole)) {
      pole_seg = int(i);
      break;
    }
  }
  require(pole_seg >= 0, Errc::pole_outside_domain, "p.v. pole not interior to the contour");

  Complex total = 0.0;
  for (size_t i = 0; i < contour.size(); ++i) {
    const auto& seg = contour[i];
    if (int(i) != pole_seg) {
      auto g = [&](double s) { return f(s) / (s - pole); };
      total += integrate_segment(g, seg, opt);
      continue;
    }
    // Reduce the pole's segment to a finite window [lo, hi] around the pole,
    // with regular ray leftovers, then subtract the singularity.
    double lo, hi;
    auto regular = [&](double s) { return f(s) / (s - pole); };
    switch (seg.kind) {
      case ContourSegment::Kind::finite_interval:
        lo = seg.a;
        hi = seg.b;
        break;
      case ContourSegment::Kind::ray_to_plus_inf: {
        check_tail_decay(f, true);
        lo = seg.a;
        hi = ray_split(std::max(pole + 1.0, seg.a));
        total += ray_tail(regular, hi, true, opt);
        break;
      }
      case ContourSegment::Kind::ray_to_minus_inf: {
        check_tail_decay(f, false);
        hi = seg.b;
        lo = -ray_split(std::max(1.0 - pole, -seg.b));
        total += ray_tail(regular, -lo, false, opt);
        break;
      }
    }
    Complex fp = f(pole);
    auto subtracted = [&](double s) -> Complex {
      double d = s - pole;
      return (f(s) - fp) / d;
    };
    // Split at the pole so no quadrature node can land on it exactly, and
    // accept the roundoff plateau of the difference quotient.
    QuadOptions sub_opt = opt;
    sub_opt.noise_floor = std::max(sub_opt.noise_floor, 2e-13 * std::max(1.0, std::abs(fp)));
    total += integrate_interval(subtracted, lo, pole, sub_opt);
    total += integrate_interval(subtracted, pole, hi, sub_opt);
    total += fp * std::log((hi - pole) / (pole - lo));
  }
  return total;
}

Complex cauchy_contour_integral(const Integrand& g, Complex k, const Contour& contour,
                                const QuadOptions& opt) {
  if (k.imag() == 0.0) {
    for (const auto& seg : contour) {
      require(!seg.contains(k.real()), Errc::evaluation_on_contour_without_side_flag,
              "point lies on the contour; use cauchy_boundary_value");
    }
  }
  auto f = [&](double s) { return g(s) / (s - k); };
  Complex val = integrate_contour(f, contour, opt);
  return val / (2.0 * kPi * kImag);
}

Complex cauchy_boundary_value(const Integrand& g, double k, int side, const Contour& contour,
                              const QuadOptions& opt) {
  require(side == 1 || side == -1, Errc::invalid_argument, "side must be +1 or -1");
  Complex pv = principal_value_integral(g, k, contour, opt);
  return pv / (2.0 * kPi * kImag) + 0.5 * double(side) * g(k);
}

}  // namespace nmkdv
