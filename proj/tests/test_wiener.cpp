#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "qmwiener/capacity.hpp"
#include "qmwiener/errors.hpp"
#include "qmwiener/exponents.hpp"
#include "qmwiener/wiener.hpp"

using namespace qmw;

namespace {

CapacityProfile power_profile(double a, double scale, std::size_t count) {
  return profile_power_decay(3, 2.0, 0.5, 1.0, a, scale, count);
}

}  // namespace

TEST_CASE("partial sums of a constant profile") {
  const CapacityProfile profile = power_profile(0.0, 0.5, 100);
  const std::vector<double> sums = wiener_partial_sums(profile, 2.0, 99);
  REQUIRE(sums.size() == 100);
  for (std::size_t k = 0; k < sums.size(); ++k) {
    CHECK(sums[k] == doctest::Approx((k + 1) * 0.25).epsilon(1e-13));
  }
}

TEST_CASE("partial sums reproduce harmonic numbers") {
  const std::size_t count = 20000;
  const CapacityProfile profile = power_profile(1.0, 1.0, count);
  const std::vector<double> sums = wiener_partial_sums(profile, 1.0, count - 1);
  long double h = 0.0L;
  for (std::size_t j = 0; j < count; ++j) h += 1.0L / static_cast<long double>(j + 1);
  CHECK(std::abs(sums.back() - static_cast<double>(h)) < 1e-12 * static_cast<double>(h));
  // non-decreasing
  for (std::size_t k = 1; k < sums.size(); ++k) CHECK(sums[k] >= sums[k - 1]);
}

TEST_CASE("quadratic decay converges to pi^2/6 at the classical rate") {
  const std::size_t count = 10001;
  const CapacityProfile profile = power_profile(2.0, 1.0, count);
  const std::vector<double> sums = wiener_partial_sums(profile, 1.0, count - 1);
  const double limit = M_PI * M_PI / 6.0;
  CHECK(std::abs(sums.back() - limit) < 1.0 / static_cast<double>(count));
}

TEST_CASE("partial sums respect K and the exponent domain") {
  const CapacityProfile profile = power_profile(1.0, 1.0, 50);
  CHECK_THROWS_AS(wiener_partial_sums(profile, 1.0, 50), domain_error);
  CHECK_THROWS_AS(wiener_partial_sums(profile, 0.0, 10), domain_error);
}

TEST_CASE("classifier on the model families") {
  // constant terms can never vanish: divergent at every exponent
  const CapacityProfile ball = profile_ball(3, 2.0, 0.5, 1.0, 64);
  for (double e : {0.5, 1.0, 3.0}) {
    CHECK(classify_with_exponent(ball, e).verdict == Verdict::Divergent);
  }
  // p-series oracle: kappa_j^e = (j+1)^{-a e}
  CHECK(classify_with_exponent(power_profile(1.0, 1.0, 4000), 2.0).verdict ==
        Verdict::Convergent);  // a e = 2
  CHECK(classify_with_exponent(power_profile(0.25, 1.0, 4000), 2.0).verdict ==
        Verdict::Divergent);  // a e = 1/2
  // the harmonic boundary lands in the inconclusive band
  CHECK(classify_with_exponent(power_profile(1.0, 1.0, 4000), 1.0).verdict ==
        Verdict::Inconclusive);
}

TEST_CASE("classify_regularity wires the Wiener exponent") {
  // Q = 4/3, p = 2, eps = 0 gives e = 2
  const WienerReport report = classify_regularity(power_profile(1.0, 1.0, 4000), 4.0 / 3.0,
                                                  2.0, 0.0);
  CHECK(report.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(report.verdict == Verdict::Convergent);
  CHECK(report.notes.find("no conclusion about irregularity") != std::string::npos);
  CHECK_THROWS_AS(classify_regularity(power_profile(1.0, 1.0, 4000), 2.0, 2.0, -1.0),
                  domain_error);
}

TEST_CASE("short profiles are rejected by the classifier") {
  CHECK_THROWS_AS(classify_with_exponent(power_profile(1.0, 1.0, 5), 1.0), domain_error);
}

TEST_CASE("partial sums shrink as the exponent grows when kappa <= 1") {
  const CapacityProfile profile = power_profile(0.5, 0.9, 500);
  const std::vector<double> low = wiener_partial_sums(profile, 1.0, 499);
  const std::vector<double> high = wiener_partial_sums(profile, 2.0, 499);
  for (std::size_t k = 0; k < low.size(); ++k) CHECK(high[k] <= low[k]);
}

TEST_CASE("divergence is monotone in the exponent for small kappa") {
  // kappa_j <= 1, so kappa^e' >= kappa^e for e' < e
  const CapacityProfile profile = power_profile(0.45, 1.0, 4000);
  bool seen_divergent = false;
  for (double e : {3.0, 2.0, 1.0, 0.5}) {  // decreasing exponents
    const Verdict v = classify_with_exponent(profile, e).verdict;
    if (seen_divergent) CHECK(v == Verdict::Divergent);
    if (v == Verdict::Divergent) seen_divergent = true;
  }
  CHECK(seen_divergent);
}

TEST_CASE("tail slope recovers the decay product") {
  const WienerReport report = classify_with_exponent(power_profile(0.7, 0.9, 2000), 2.0);
  CHECK(report.tail_slope == doctest::Approx(1.4).epsilon(1e-6));
  CHECK(report.tail_residual < 1e-8);
}

TEST_CASE("potential bound basics") {
  const CapacityProfile profile = power_profile(0.0, 0.8, 32);  // constant kappa = 0.8
  // empty sum by convention
  CHECK(potential_lower_bound(profile, 1.0, 1.0, -1).final_level() == 0.0);
  // single term: 1 - exp(-kappa)
  const PotentialBound first = potential_lower_bound(profile, 1.0, 1.0, 0);
  REQUIRE(first.levels.size() == 1);
  CHECK(first.levels[0] == doctest::Approx(1.0 - std::exp(-0.8)).epsilon(1e-14));
  // divergent sum drives the levels to 1
  const PotentialBound deep = potential_lower_bound(profile, 1.0, 1.0, 31);
  CHECK(deep.final_level() > 1.0 - 1e-10);
  for (std::size_t k = 1; k < deep.levels.size(); ++k) {
    CHECK(deep.levels[k] >= deep.levels[k - 1]);
    CHECK(deep.levels[k] < 1.0);
  }
  CHECK_THROWS_AS(potential_lower_bound(profile, 0.0, 1.0, 3), domain_error);
  CHECK_THROWS_AS(potential_lower_bound(profile, 1.0, 0.0, 3), domain_error);
  CHECK_THROWS_AS(potential_lower_bound(profile, 1.0, 1.0, 32), domain_error);
}

TEST_CASE("admissible delta and its interval") {
  // Q = 4/3, p = 2: admissible s in (2, 3)
  const DeltaExponent rec = delta_exponent(4.0 / 3.0, 2.0, 2.5);
  CHECK(rec.p1 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rec.delta == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(admissible_delta(4.0 / 3.0, 2.0, 2.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // towards the right endpoint: delta -> (p-1)/alpha_bar = 1/2
  const double near = admissible_delta(4.0 / 3.0, 2.0, 3.0 - 1e-9);
  CHECK(near == doctest::Approx(0.5).epsilon(1e-8));

  // outside the interval: the message names both endpoints
  try {
    admissible_delta(4.0 / 3.0, 2.0, 3.5);
    CHECK(false);
  } catch (const domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);
  }
  CHECK_THROWS_AS(admissible_delta(4.0 / 3.0, 2.0, 2.0), domain_error);

  // classical case: every s > p/(p-1) is admissible
  CHECK(admissible_delta(1.0, 2.0, 100.0) ==
        doctest::Approx(2.0 - 100.0 / 99.0).epsilon(1e-12));
}

TEST_CASE("admissible deltas fill the open interval (0, p - 1/beta)") {
  const double q = 2.0, p = 3.0;
  const double upper = delta_range(q, p).upper;
  const DeltaExponent probe = delta_exponent(q, p, (p / (p - 1.0)) * 1.000001);
  for (int i = 1; i < 40; ++i) {
    const double s = p / (p - 1.0) + (probe.p1 - p / (p - 1.0)) * i / 40.0;
    const double delta = admissible_delta(q, p, s);
    CHECK(delta > 0.0);
    CHECK(delta < upper * (1.0 + 1e-12));
  }
}

TEST_CASE("classifier exponent approaches the classical 1/(p-1)") {
  const CapacityProfile profile = power_profile(0.2, 1.0, 256);
  for (double p : {1.5, 2.0, 4.0}) {
    const WienerReport report = classify_regularity(profile, 1.0, p, 0.0);
    CHECK(report.exponent == doctest::Approx(1.0 / (p - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("partial-sum CSV export") {
  const WienerReport report = classify_with_exponent(power_profile(0.5, 1.0, 16), 1.0);
  std::ostringstream os;
  write_partial_sums_csv(os, report);
  const std::string text = os.str();
  CHECK(text.rfind("K,S_K\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 17);  // header + 16 rows
}
