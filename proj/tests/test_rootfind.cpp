#include <doctest.h>

#include <cmath>

#include "qmwiener/rootfind.hpp"

using qmw::solve_monotone;

TEST_CASE("cubic root on a tight bracket") {
  auto f = [](double x) { return x * x * x - 2.0; };
  auto df = [](double x) { return 3.0 * x * x; };
  const double root = solve_monotone(f, df, 1.0, 2.0);
  CHECK(root == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
}

TEST_CASE("decreasing function") {
  auto f = [](double x) { return std::exp(-x) - 0.25; };
  auto df = [](double x) { return -std::exp(-x); };
  const double root = solve_monotone(f, df, 0.0, 10.0);
  CHECK(root == doctest::Approx(std::log(4.0)).epsilon(1e-14));
}

TEST_CASE("wide positive bracket uses geometric bisection") {
  auto f = [](double x) { return std::log(x) - 60.0; };
  auto df = [](double x) { return 1.0 / x; };
  const double root = solve_monotone(f, df, 1.0, 1e80);
  CHECK(root == doctest::Approx(std::exp(60.0)).epsilon(1e-12));
}

TEST_CASE("endpoint roots are returned directly") {
  auto f = [](double x) { return x - 3.0; };
  auto df = [](double) { return 1.0; };
  CHECK(solve_monotone(f, df, 3.0, 5.0) == 3.0);
  CHECK(solve_monotone(f, df, 1.0, 3.0) == 3.0);
}

TEST_CASE("missing sign change is a convergence error") {
  auto f = [](double x) { return x * x + 1.0; };
  auto df = [](double x) { return 2.0 * x; };
  CHECK_THROWS_AS(solve_monotone(f, df, 1.0, 2.0), qmw::convergence_error);
}

TEST_CASE("empty bracket is a domain error") {
  auto f = [](double x) { return x; };
  auto df = [](double) { return 1.0; };
  CHECK_THROWS_AS(solve_monotone(f, df, 2.0, 2.0), qmw::domain_error);
}

TEST_CASE("unusable derivative falls back to bisection") {
  auto f = [](double x) { return x - 0.7357; };
  auto df = [](double) { return 0.0; };
  const double root = solve_monotone(f, df, 0.0, 1.0);
  CHECK(root == doctest::Approx(0.7357).epsilon(1e-10));
}
