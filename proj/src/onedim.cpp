#include "qmwiener/onedim.hpp"

#include <algorithm>
#include <cmath>

#include "qmwiener/errors.hpp"

namespace qmw {

namespace {

constexpr double kMinWidth = 1e-12;

// b^s - a^s as b^s (1 - (a/b)^s): no cancellation for nearby endpoints and
// no overflow when a is tiny while s log(b/a) is huge
double power_difference(double a, double b, double s) {
  if (a == 0.0) return std::pow(b, s);
  return -std::pow(b, s) * std::expm1(s * (std::log(a) - std::log(b)));
}

template <class F>
double golden_max(const F& f, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 80 && hi - lo > 1e-12; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PowerEnergyRatio energy_ratio_detail(double alpha, double p, double a, double b) {
  require_domain(p > 1.0, "energy_ratio: p must be > 1");
  require_domain(alpha > 1.0 - 1.0 / p, "energy_ratio: alpha must exceed 1 - 1/p");
  require_domain(a >= 0.0 && b <= 1.0 && a < b, "energy_ratio: need 0 <= a < b <= 1");
  require_domain(b - a >= kMinWidth, "energy_ratio: degenerate interval");

  const double s = std::fma(p, alpha - 1.0, 1.0);  // (alpha-1)p + 1 > 0
  const double energy_power = std::pow(alpha, p) * power_difference(a, b, s) / s;
  const double endpoint_gap = power_difference(a, b, alpha);
  const double energy_linear = std::pow(endpoint_gap, p) / std::pow(b - a, p - 1.0);
  return PowerEnergyRatio{alpha, p, a, b, energy_power, energy_linear,
                          energy_power / energy_linear};
}

double energy_ratio(double alpha, double p, double a, double b) {
  return energy_ratio_detail(alpha, p, a, b).ratio;
}

double best_constant_search(double alpha, double p, int grid) {
  require_domain(grid >= 50, "best_constant_search: grid must be >= 50");
  const double g = static_cast<double>(grid);

  double best = 1.0;
  double best_a = 0.0, best_b = 1.0;
  for (int i = 0; i < grid; ++i) {
    const double a = static_cast<double>(i) / g;  // i = 0 gives a = 0 exactly
    for (int j = i + 1; j <= grid; ++j) {
      const double b = static_cast<double>(j) / g;
      const double r = energy_ratio(alpha, p, a, b);
      if (r > best) {
        best = r;
        best_a = a;
        best_b = b;
      }
    }
  }

  // local refinement around the grid winner, one golden pass per coordinate
  const double h = 1.5 / g;
  double a = best_a, b = best_b;
  for (int pass = 0; pass < 2; ++pass) {
    const double a_hi = std::min(b - kMinWidth, a + h);
    const double a_lo = std::max(0.0, a - h);
    if (a_hi > a_lo) {
      a = golden_max([&](double t) { return energy_ratio(alpha, p, t, b); }, a_lo, a_hi);
    }
    const double b_lo = std::max(a + kMinWidth, b - h);
    const double b_hi = std::min(1.0, b + h);
    if (b_hi > b_lo) {
      b = golden_max([&](double t) { return energy_ratio(alpha, p, a, t); }, b_lo, b_hi);
    }
  }
  best = std::max(best, energy_ratio(alpha, p, a, b));
  return best;
}

}  // namespace qmw
