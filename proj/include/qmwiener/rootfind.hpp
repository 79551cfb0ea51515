#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "qmwiener/errors.hpp"

namespace qmw {

struct RootOptions {
  double abs_tol = 1e-12;   // bracket width target for O(1) roots
  double rel_tol = 8.9e-16; // ~4 ulp, takes over for large roots
  int max_iterations = 200;
};

// Process-wide defaults, overridable from the CLI via --tolerance.
inline RootOptions& solver_options() {
  static RootOptions opts;
  return opts;
}

namespace detail {

inline double bracket_midpoint(double a, double b) {
  // geometric midpoint for wide positive brackets, arithmetic otherwise
  if (a > 0.0 && b / a > 8.0) return std::sqrt(a) * std::sqrt(b);
  return 0.5 * (a + b);
}

}  // namespace detail

// Root of a strictly monotone f on [lo, hi] with f(lo) and f(hi) of opposite
// sign (either may be zero).  Safeguarded Newton: every iterate stays inside
// the current bracket, falling back to bisection (geometric when the bracket
// spans orders of magnitude) whenever the Newton step is unusable.
template <class F, class DF>
double solve_monotone(F&& f, DF&& df, double lo, double hi,
                      const RootOptions& opts = solver_options()) {
  if (!(lo < hi)) throw domain_error("solve_monotone: empty bracket");
  double fa = f(lo);
  double fb = f(hi);
  if (fa == 0.0) return lo;
  if (fb == 0.0) return hi;
  if (std::signbit(fa) == std::signbit(fb)) {
    std::ostringstream msg;
    msg << "solve_monotone: no sign change on [" << lo << ", " << hi << "]";
    throw convergence_error(msg.str());
  }

  double a = lo, b = hi;
  double x = detail::bracket_midpoint(a, b);
  double fx = f(x);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (fx == 0.0) return x;
    // shrink the bracket
    if (std::signbit(fx) == std::signbit(fa)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    const double width = b - a;
    const double scale = std::abs(a) + std::abs(b);
    if (width <= opts.abs_tol || width <= opts.rel_tol * scale) {
      // bracket exhausted: pick the endpoint with the smaller residual
      return std::abs(fa) < std::abs(fb) ? a : b;
    }

    double next = std::numeric_limits<double>::quiet_NaN();
    const double d = df(x);
    if (std::isfinite(d) && d != 0.0) {
      const double step = fx / d;
      const double cand = x - step;
      if (std::isfinite(cand) && cand > a && cand < b) {
        next = cand;
        if (std::abs(step) <= opts.rel_tol * std::abs(x) + opts.abs_tol * 1e-3) {
          return cand;
        }
      }
    }
    if (!std::isfinite(next)) next = detail::bracket_midpoint(a, b);
    x = next;
    fx = f(x);
  }
  throw convergence_error("solve_monotone: iteration cap reached");
}

}  // namespace qmw
