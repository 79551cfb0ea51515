#include <doctest.h>

#include <cmath>
#include <tuple>
#include <vector>

#include "qmwiener/errors.hpp"
#include "qmwiener/exponents.hpp"
#include "qmwiener/sharpness.hpp"

using namespace qmw;

TEST_CASE("gamma_of pinned values and loop closure") {
  // Q = 4/3, p = 2, n = 3: alpha_bar = 2, gamma = 2
  CHECK(gamma_of(4.0 / 3.0, 2.0, 3) == doctest::Approx(2.0).epsilon(1e-12));
  // the best constant of |x|^{-gamma} closes the loop back to Q
  const std::vector<std::tuple<double, double, int>> configs = {
      {4.0 / 3.0, 2.0, 3}, {2.0, 2.0, 3}, {2.0, 2.5, 4}};
  for (const auto& [q, p, n] : configs) {
    const double gamma = gamma_of(q, p, n);
    CHECK(best_constant_power(gamma, p, n, PowerMode::NegativeExponent) ==
          doctest::Approx(q).epsilon(1e-10));
  }
  // Q -> 1 leaves the p-Green exponent (n-p)/(p-1)
  CHECK(gamma_of(1.0, 2.0, 3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(gamma_of(2.0, 3.0, 3), domain_error);  // p >= n
}

TEST_CASE("u_eps values") {
  CHECK(u_eps_inf(0.01, 2.0, 1.0) == 0.0);  // vanishes on the unit sphere
  CHECK(u_eps_inf(0.01, 2.0, 2.0 / 3.0) == doctest::Approx(0.0125).epsilon(1e-14));
  // at rho_eps the potential reaches exactly 1
  const double eps = 1e-5;
  const double rho = rho_of_eps(eps, 2.0);
  CHECK(u_eps_inf(eps, 2.0, rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(u_eps_inf(eps, 2.0, rho * 0.5), saturated_potential);
}

TEST_CASE("rho_of_eps") {
  CHECK(rho_of_eps(1e-2, 2.0) == doctest::Approx(std::sqrt(0.01 / 1.01)).epsilon(1e-15));
  CHECK(rho_of_eps(1e-8, 2.0) < rho_of_eps(1e-2, 2.0));
  CHECK_THROWS_AS(rho_of_eps(0.0, 2.0), domain_error);
}

TEST_CASE("canonical run reproduces the default eps window and the slope") {
  const SharpnessRun run = run_sharpness(SharpnessConfig{});
  REQUIRE(run.samples.size() == 40);
  // rho window [1e-4, 0.1] at gamma = 2 is eps in [1e-8, ~1e-2]
  CHECK(run.samples.front().eps == doctest::Approx(1e-2).epsilon(2e-2));
  CHECK(run.samples.back().eps == doctest::Approx(1e-8).epsilon(2e-2));
  for (std::size_t i = 1; i < run.samples.size(); ++i) {
    CHECK(run.samples[i].eps < run.samples[i - 1].eps);  // decreasing sweep
    CHECK(run.samples[i].rho_eps > 0.0);
    CHECK(run.samples[i].rho_eps < 1.0);
  }
  CHECK(run.target_slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(run.fit_rel_err < 0.02);
}

TEST_CASE("slope is invariant under rescaling the capacity term") {
  SharpnessRun run = run_sharpness(SharpnessConfig{});
  const double slope = run.fitted_slope;
  for (SharpnessSample& s : run.samples) s.cap_term *= 7.25;
  CHECK(sharpness_fit(run) == doctest::Approx(slope).epsilon(1e-12));
}

TEST_CASE("doubling gamma doubles the fitted slope") {
  SharpnessConfig config;
  config.Q = 16.0 / 7.0;  // alpha_bar = 4 at p = 2
  const SharpnessRun doubled = run_sharpness(config);
  const SharpnessRun base = run_sharpness(SharpnessConfig{});
  CHECK(doubled.target_slope == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(doubled.fitted_slope / base.fitted_slope == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("eps grid must span four decades for the fit") {
  SharpnessConfig config;
  config.eps_range = {1e-3, 1e-2};
  CHECK_THROWS_AS(run_sharpness(config), domain_error);
}

TEST_CASE("run configuration validation") {
  SharpnessConfig config;
  config.ball_radius = 0.4;  // 3B would poke out of the unit ball
  CHECK_THROWS_AS(run_sharpness(config), domain_error);
  SharpnessConfig degenerate;
  degenerate.points = 2;
  CHECK_THROWS_AS(run_sharpness(degenerate), domain_error);
}

TEST_CASE("iterated check flips exactly at delta_star") {
  const SharpnessRun run = run_sharpness(SharpnessConfig{});
  const double delta_star = (run.config.n - run.config.p) / run.gamma;
  CHECK(delta_star == doctest::Approx(0.5).epsilon(1e-12));

  const IteratedCheck below = iterated_sharpness_check(run, 0.9 * delta_star, 1.0, 2);
  CHECK(below.verdict == IteratedVerdict::Consistent);
  CHECK(below.ratio_slope == doctest::Approx(1.0 - 1.0 / 0.9).epsilon(1e-9));

  const IteratedCheck at = iterated_sharpness_check(run, delta_star, 1.0, 2);
  CHECK(at.verdict == IteratedVerdict::Boundary);

  const IteratedCheck above = iterated_sharpness_check(run, 1.1 * delta_star, 1.0, 2);
  CHECK(above.verdict == IteratedVerdict::Falsified);
  CHECK(above.ratio_slope == doctest::Approx(1.0 - 1.0 / 1.1).epsilon(1e-9));
  // the falsifying direction: lhs/rhs decays towards small eps
  CHECK(above.ratio_last < above.ratio_first);
}

TEST_CASE("saturation boundary of the iterated comparison") {
  // at eps = r_{k+1}^gamma the undropped left side eps r_{k+1}^{-gamma} is 1
  const double gamma = 2.0;
  for (int k : {0, 1, 3}) {
    const double r = std::pow(3.0, -(k + 2));
    const double eps = std::pow(r, gamma);
    CHECK(eps * std::pow(r, -gamma) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("iterated check needs enough settled samples") {
  const SharpnessRun run = run_sharpness(SharpnessConfig{});
  // k so deep that eps^(1/gamma) <= r_{k+1} never holds on the grid
  CHECK_THROWS_AS(iterated_sharpness_check(run, 0.5, 1.0, 12), domain_error);
  CHECK_THROWS_AS(iterated_sharpness_check(run, -0.1, 1.0, 2), domain_error);
}
