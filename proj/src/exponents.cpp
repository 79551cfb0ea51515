#include "qmwiener/exponents.hpp"

#include <cmath>
#include <sstream>

#include "qmwiener/errors.hpp"
#include "qmwiener/rootfind.hpp"

namespace qmw {

namespace {

constexpr double kDegenerateQ = 1e-14;  // Q - 1 below this collapses both roots to 1

void check_qp(double Q, double p) {
  require_domain(p > 1.0, "exponents: p must be > 1");
  require_domain(Q >= 1.0, "exponents: Q must be >= 1");
}

// 1 + p (alpha - 1), fused so the cancellation near the left endpoint does
// not poison Q(alpha, p) for alpha close to 1 - 1/p.
double q_denominator(double alpha, double p) { return std::fma(p, alpha - 1.0, 1.0); }

double q_derivative(double alpha, double p) {
  const double denom = q_denominator(alpha, p);
  return p * (p - 1.0) * std::pow(alpha, p - 1.0) * (alpha - 1.0) / (denom * denom);
}

}  // namespace

double q_of_alpha(double alpha, double p) {
  require_domain(p > 1.0, "q_of_alpha: p must be > 1");
  require_domain(alpha > 1.0 - 1.0 / p, "q_of_alpha: alpha must exceed 1 - 1/p");
  const double denom = q_denominator(alpha, p);
  require_domain(denom > 0.0, "q_of_alpha: alpha too close to 1 - 1/p");
  return std::pow(alpha, p) / denom;
}

double solve_alpha_bar(double Q, double p) {
  check_qp(Q, p);
  if (Q - 1.0 < kDegenerateQ) return 1.0;
  const double log_hi = std::log(p * Q) / (p - 1.0);
  require_domain(log_hi < 708.0, "solve_alpha_bar: root exceeds double range");
  // the root approaches (pQ)^{1/(p-1)} to within less than an ulp, so the
  // bracket needs a relative margin, not just an absolute one
  const double hi = std::exp(log_hi) * (1.0 + 1e-6) + 1.0;
  return solve_monotone([&](double a) { return q_of_alpha(a, p) - Q; },
                        [&](double a) { return q_derivative(a, p); }, 1.0, hi);
}

double solve_alpha_lower(double Q, double p) {
  check_qp(Q, p);
  if (Q - 1.0 < kDegenerateQ) return 1.0;
  const double left = 1.0 - 1.0 / p;
  // smallest representable alpha with a positive denominator
  double floor_alpha = std::nextafter(left, 1.0);
  while (q_denominator(floor_alpha, p) <= 0.0) floor_alpha = std::nextafter(floor_alpha, 1.0);

  double eta = std::min(1e-3, 0.25 / p);
  double lo = left + eta;
  while (lo > floor_alpha && q_of_alpha(lo, p) <= Q) {
    eta *= 0.5;
    lo = left + eta;
  }
  if (lo <= floor_alpha) {
    lo = floor_alpha;
    if (q_of_alpha(lo, p) <= Q) {
      // Q is so large that the root sits within one ulp of 1 - 1/p; the
      // closest admissible double is the best answer double precision has.
      return lo;
    }
  }
  return solve_monotone([&](double a) { return q_of_alpha(a, p) - Q; },
                        [&](double a) { return q_derivative(a, p); }, lo, 1.0);
}

ExponentPair exponent_pair(double Q, double p) {
  return ExponentPair{p, Q, solve_alpha_lower(Q, p), solve_alpha_bar(Q, p)};
}

double solve_p1(double p, double t) {
  require_domain(p > 1.0, "solve_p1: p must be > 1");
  require_domain(t > 1.0, "solve_p1: t must be > 1");
  // log form of t^p (x-p)/x (x/(x-1))^p = 1; strictly increasing in x
  const double plogt = p * std::log(t);
  const auto g = [&](double x) {
    return plogt + std::log(x - p) - std::log(x) + p * (std::log(x) - std::log(x - 1.0));
  };
  const auto dg = [&](double x) {
    return 1.0 / (x - p) + (p - 1.0) / x - p / (x - 1.0);
  };

  double delta = 0.5 * std::max(1.0, p);
  while (g(p + delta) > 0.0) {
    delta *= 0.25;
    if (delta < 1e-300) throw convergence_error("solve_p1: lower bracket collapse");
  }
  double hi = p + std::max(1.0, p);
  while (g(hi) < 0.0) {
    hi = p + 2.0 * (hi - p);
    if (hi > 1e300) throw convergence_error("solve_p1: upper bracket escape");
  }
  return solve_monotone(g, dg, p + delta, hi);
}

double beta_of_alpha(double alpha, double p) {
  require_domain(p > 1.0, "beta_of_alpha: p must be > 1");
  require_domain(alpha > 1.0 - 1.0 / p, "beta_of_alpha: alpha must exceed 1 - 1/p");
  const double denom = q_denominator(alpha, p);
  require_domain(denom > 0.0, "beta_of_alpha: alpha too close to 1 - 1/p");
  return alpha / denom;
}

DualityRecord duality_record(double Q, double p) {
  check_qp(Q, p);
  const double p_dual = p / (p - 1.0);
  const double log_q_dual = std::log(Q) / (p - 1.0);
  require_domain(log_q_dual < 708.0, "duality_record: dual constant exceeds double range");
  const double q_dual = std::exp(log_q_dual);
  DualityRecord rec{};
  rec.p = p;
  rec.p_dual = p_dual;
  rec.Q = Q;
  rec.Q_dual = q_dual;
  rec.alpha_lower = solve_alpha_lower(Q, p);
  rec.alpha_bar = solve_alpha_bar(Q, p);
  rec.beta_lower = solve_alpha_lower(q_dual, p_dual);
  rec.beta_bar = solve_alpha_bar(q_dual, p_dual);
  return rec;
}

double wiener_exponent(double Q, double p, double eps) {
  require_domain(eps >= 0.0, "wiener_exponent: eps must be >= 0");
  return solve_alpha_bar(Q, p) / (p - 1.0) + eps;
}

AlphaBarBounds alpha_bar_bounds(double Q, double p) {
  check_qp(Q, p);
  return AlphaBarBounds{std::pow(Q, 1.0 / (p - 1.0)), std::pow(p * Q, 1.0 / (p - 1.0))};
}

DeltaRange delta_range(double Q, double p) {
  check_qp(Q, p);
  const DualityRecord rec = duality_record(Q, p);
  const double beta = rec.beta_lower;
  DeltaRange range{};
  range.lower = 0.0;
  range.upper = (p * beta - 1.0) / beta;
  range.beta_lower = beta;
  range.exponent_limit = rec.alpha_bar / (p - 1.0);
  return range;
}

double best_constant_power(double exponent, double p, int n, PowerMode mode) {
  require_domain(n >= 1, "best_constant_power: n must be >= 1");
  require_domain(p > 1.0, "best_constant_power: p must be > 1");
  require_domain(p != static_cast<double>(n), "best_constant_power: p = n is excluded");
  const double nd = static_cast<double>(n);
  if (mode == PowerMode::PositiveExponent) {
    require_domain(p > nd, "best_constant_power: positive-power mode needs p > n");
    if (!(exponent > 1.0 - nd / p)) {
      std::ostringstream msg;
      msg << "best_constant_power: alpha must exceed 1 - n/p = " << 1.0 - nd / p;
      throw domain_error(msg.str());
    }
    const double denom = std::fma(p, exponent - 1.0, nd);
    return std::pow((p - 1.0) / (p - nd), p - 1.0) * std::pow(exponent, p) / denom;
  }
  require_domain(p < nd, "best_constant_power: negative-power mode needs p < n");
  if (!(exponent > nd / p - 1.0)) {
    std::ostringstream msg;
    msg << "best_constant_power: gamma must exceed n/p - 1 = " << nd / p - 1.0;
    throw domain_error(msg.str());
  }
  const double denom = std::fma(p, exponent, -(nd - p));
  return std::pow((p - 1.0) / (nd - p), p - 1.0) * std::pow(exponent, p) / denom;
}

}  // namespace qmw
