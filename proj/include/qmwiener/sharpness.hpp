#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qmw {

// gamma = alpha_bar(Q, p) (n - p)/(p - 1); always exceeds n/p - 1, so
// |x|^{-gamma} has best quasiminimizer constant Q in B(0,1) \ {0}.
double gamma_of(double Q, double p, int n);

// rho_eps = (eps/(1+eps))^{1/gamma}, the radius where the truncated potential
// u_eps = min{eps(|x|^{-gamma} - 1), 1} reaches 1.
double rho_of_eps(double eps, double gamma);

// u_eps on the sphere of the given radius, eps (radius^{-gamma} - 1).
// Throws saturated_potential when the radius dips below rho_eps.
double u_eps_inf(double eps, double gamma, double radius);

// Sweep of the truncated potentials u_eps for |x|^{-gamma}.  The potential
// lives in 3B = B(0, 3 ball_radius); per sample we record the infimum of
// u_eps over 2B and the capacity term cp_p(E_eps, 3B)/ball_radius^{n-p}.
//
// The eps grid is the image of a fixed window of inner radii rho_eps
// (geometric smallness of E_eps relative to the balls), so every
// configuration is swept equally deep into the asymptotic regime; at the
// canonical gamma = 2 this reproduces eps in [1e-8, 1e-2].
struct SharpnessConfig {
  double Q = 4.0 / 3.0;
  double p = 2.0;
  int n = 3;
  double ball_radius = 1.0 / 3.0;  // radius of B
  double rho_min = 1e-4;
  double rho_max = 0.1;
  std::size_t points = 40;
  // explicit eps range overrides the rho window when set
  std::optional<std::pair<double, double>> eps_range;
};

struct SharpnessSample {
  double eps;
  double rho_eps;
  double inf_2b;
  double cap_term;
};

struct SharpnessRun {
  SharpnessConfig config;
  double alpha_bar = 0.0;
  double gamma = 0.0;
  double target_slope = 0.0;  // alpha_bar/(p-1) = gamma/(n-p)
  std::vector<SharpnessSample> samples;  // eps decreasing
  double fitted_slope = 0.0;
  double fit_rel_err = 0.0;
};

SharpnessRun run_sharpness(const SharpnessConfig& config);

// Least-squares slope of log(inf_2b) against log(cap_term); requires the eps
// grid to span at least four decades and four usable points.
double sharpness_fit(const SharpnessRun& run);

// Scaling test of the iterated estimate at radii r_j = 3^{-(j+1)}: compares
// lhs = eps r_{k+1}^{-gamma} with rhs = c (eps^{1/gamma}/r_k)^{(n-p)/delta}
// along the run's eps grid.  The log-log slope of lhs/rhs in eps equals
// 1 - (n-p)/(gamma delta): positive means the ratio vanishes as eps -> 0 and
// the bound is falsified, negative means it stays bounded below; the flip
// sits exactly at delta = (n-p)/gamma, reported as Boundary.
enum class IteratedVerdict { Falsified, Consistent, Boundary };
std::string iterated_verdict_name(IteratedVerdict v);

struct IteratedCheck {
  double delta = 0.0;
  double delta_star = 0.0;  // (n-p)/gamma
  int k = 0;
  double ratio_slope = 0.0;
  double ratio_first = 0.0;  // lhs/rhs at the largest usable eps
  double ratio_last = 0.0;   // lhs/rhs at the smallest usable eps
  IteratedVerdict verdict = IteratedVerdict::Boundary;
};
IteratedCheck iterated_sharpness_check(const SharpnessRun& run, double delta, double c, int k);

}  // namespace qmw
