#include "qmwiener/sharpness.hpp"

#include <cmath>
#include <sstream>

#include "qmwiener/capacity.hpp"
#include "qmwiener/errors.hpp"
#include "qmwiener/exponents.hpp"
#include "qmwiener/fit.hpp"

namespace qmw {

double gamma_of(double Q, double p, int n) {
  require_domain(n >= 2, "gamma_of: n must be >= 2");
  require_domain(p > 1.0 && p < static_cast<double>(n), "gamma_of: need 1 < p < n");
  require_domain(Q >= 1.0, "gamma_of: Q must be >= 1");
  const double gamma = solve_alpha_bar(Q, p) * (static_cast<double>(n) - p) / (p - 1.0);
  // alpha_bar >= 1 > (p-1)/p forces gamma > n/p - 1
  require_domain(gamma > static_cast<double>(n) / p - 1.0, "gamma_of: inadmissible gamma");
  return gamma;
}

double rho_of_eps(double eps, double gamma) {
  require_domain(eps > 0.0, "rho_of_eps: eps must be positive");
  require_domain(gamma > 0.0, "rho_of_eps: gamma must be positive");
  return std::pow(eps / (1.0 + eps), 1.0 / gamma);
}

double u_eps_inf(double eps, double gamma, double radius) {
  require_domain(eps > 0.0, "u_eps_inf: eps must be positive");
  require_domain(gamma > 0.0, "u_eps_inf: gamma must be positive");
  require_domain(radius > 0.0 && radius <= 1.0, "u_eps_inf: radius must lie in (0, 1]");
  const double rho = rho_of_eps(eps, gamma);
  if (radius < rho * (1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "u_eps_inf: radius " << radius << " is inside rho_eps = " << rho
        << ", where the potential saturates at 1";
    throw saturated_potential(msg.str());
  }
  return eps * (std::pow(radius, -gamma) - 1.0);
}

SharpnessRun run_sharpness(const SharpnessConfig& config) {
  require_domain(config.points >= 4, "sharpness: need at least 4 grid points");
  require_domain(config.ball_radius > 0.0 && 3.0 * config.ball_radius <= 1.0,
                 "sharpness: need 0 < ball_radius <= 1/3 so the potential lives in 3B");

  SharpnessRun run;
  run.config = config;
  run.alpha_bar = solve_alpha_bar(config.Q, config.p);
  run.gamma = gamma_of(config.Q, config.p, config.n);
  run.target_slope = run.alpha_bar / (config.p - 1.0);

  double eps_hi, eps_lo;
  if (config.eps_range) {
    eps_lo = config.eps_range->first;
    eps_hi = config.eps_range->second;
    require_domain(eps_lo > 0.0 && eps_lo < eps_hi, "sharpness: bad explicit eps range");
  } else {
    require_domain(config.rho_min > 0.0 && config.rho_min < config.rho_max &&
                       config.rho_max < 1.0,
                   "sharpness: bad rho window");
    // eps = rho^gamma / (1 - rho^gamma) inverts rho_eps
    const double shi = std::pow(config.rho_max, run.gamma);
    const double slo = std::pow(config.rho_min, run.gamma);
    eps_hi = shi / (1.0 - shi);
    eps_lo = slo / (1.0 - slo);
  }

  const double r_ball = config.ball_radius;
  run.samples.reserve(config.points);
  const double log_step = std::log(eps_lo / eps_hi) / static_cast<double>(config.points - 1);
  for (std::size_t i = 0; i < config.points; ++i) {
    SharpnessSample s{};
    s.eps = eps_hi * std::exp(log_step * static_cast<double>(i));
    s.rho_eps = rho_of_eps(s.eps, run.gamma);
    require_domain(s.rho_eps < r_ball,
                   "sharpness: rho_eps reaches the ball radius; shrink the eps grid");
    s.inf_2b = u_eps_inf(s.eps, run.gamma, 2.0 * r_ball);
    const Condenser cond{config.n, config.p, s.rho_eps, 3.0 * r_ball};
    s.cap_term = radial_capacity(cond) /
                 std::pow(r_ball, static_cast<double>(config.n) - config.p);
    run.samples.push_back(s);
  }
  run.fitted_slope = sharpness_fit(run);
  run.fit_rel_err = std::abs(run.fitted_slope - run.target_slope) / run.target_slope;
  return run;
}

double sharpness_fit(const SharpnessRun& run) {
  require_domain(run.samples.size() >= 4, "sharpness_fit: fewer than 4 usable points");
  const double decades =
      std::log10(run.samples.front().eps / run.samples.back().eps);
  require_domain(decades >= 4.0 - 1e-9, "sharpness_fit: eps grid must span at least 4 decades");
  std::vector<double> xs, ys;
  xs.reserve(run.samples.size());
  ys.reserve(run.samples.size());
  for (const SharpnessSample& s : run.samples) {
    xs.push_back(std::log(s.cap_term));
    ys.push_back(std::log(s.inf_2b));
  }
  return linear_fit(xs, ys).slope;
}

std::string iterated_verdict_name(IteratedVerdict v) {
  switch (v) {
    case IteratedVerdict::Falsified: return "FALSIFIED";
    case IteratedVerdict::Consistent: return "CONSISTENT";
    case IteratedVerdict::Boundary: return "BOUNDARY";
  }
  return "BOUNDARY";
}

IteratedCheck iterated_sharpness_check(const SharpnessRun& run, double delta, double c, int k) {
  require_domain(delta > 0.0, "iterated_sharpness_check: delta must be positive");
  require_domain(c > 0.0, "iterated_sharpness_check: c must be positive");
  require_domain(k >= 0, "iterated_sharpness_check: k must be >= 0");

  const double np = static_cast<double>(run.config.n) - run.config.p;
  IteratedCheck check;
  check.delta = delta;
  check.delta_star = np / run.gamma;
  check.k = k;

  const double r_k = std::pow(3.0, -static_cast<double>(k + 1));
  const double r_k1 = std::pow(3.0, -static_cast<double>(k + 2));

  std::vector<double> xs, ys;
  for (const SharpnessSample& s : run.samples) {
    if (std::pow(s.eps, 1.0 / run.gamma) > r_k1) continue;  // potential not settled yet
    const double lhs = s.eps * std::pow(r_k1, -run.gamma);
    const double rhs = c * std::pow(std::pow(s.eps, 1.0 / run.gamma) / r_k, np / delta);
    xs.push_back(std::log(s.eps));
    ys.push_back(std::log(lhs / rhs));
  }
  require_domain(xs.size() >= 4,
                 "iterated_sharpness_check: fewer than 4 samples satisfy eps^(1/gamma) <= r_{k+1}");

  const LinearFit fit = linear_fit(xs, ys);
  check.ratio_slope = fit.slope;  // analytically 1 - (n-p)/(gamma delta)
  check.ratio_first = std::exp(ys.front());
  check.ratio_last = std::exp(ys.back());

  constexpr double slope_tol = 1e-6;
  if (check.ratio_slope > slope_tol) {
    check.verdict = IteratedVerdict::Falsified;
  } else if (check.ratio_slope < -slope_tol) {
    check.verdict = IteratedVerdict::Consistent;
  } else {
    check.verdict = IteratedVerdict::Boundary;
  }
  return check;
}

}  // namespace qmw
