#include "qmwiener/wiener.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "qmwiener/errors.hpp"
#include "qmwiener/exponents.hpp"
#include "qmwiener/fit.hpp"
#include "qmwiener/kernels.hpp"

namespace qmw {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Divergent: return "DIVERGENT";
    case Verdict::Convergent: return "CONVERGENT";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

std::vector<double> power_terms(const CapacityProfile& profile, double e, std::size_t count) {
  std::vector<double> terms(count);
  kernels::pow_terms(std::span<const double>(profile.kappa.data(), count), e, terms);
  return terms;
}

}  // namespace

std::vector<double> wiener_partial_sums(const CapacityProfile& profile, double e,
                                        std::size_t k_max) {
  require_domain(e > 0.0, "wiener_partial_sums: exponent must be positive");
  require_domain(k_max < profile.size(), "wiener_partial_sums: K exceeds profile length");
  const std::size_t count = k_max + 1;
  const std::vector<double> terms = power_terms(profile, e, count);
  std::vector<double> sums(count);
  kernels::kahan_prefix_sums(terms, sums);
  return sums;
}

WienerReport classify_with_exponent(const CapacityProfile& profile, double e,
                                    const ClassifierSettings& settings) {
  require_domain(e > 0.0, "classify: exponent must be positive");
  const std::size_t m = profile.size();
  if (m < settings.min_terms) {
    std::ostringstream msg;
    msg << "classify: profile has " << m << " terms, below the minimum fit window "
        << settings.min_terms;
    throw domain_error(msg.str());
  }

  WienerReport report;
  report.exponent = e;
  report.terms = power_terms(profile, e, m);
  report.partial_sums.resize(m);
  kernels::kahan_prefix_sums(report.terms, report.partial_sums);

  // tail fit over the last max(min_terms, m/2) strictly positive terms
  const std::size_t window = std::min(m, std::max(settings.min_terms, m / 2));
  std::vector<double> xs, ys;
  xs.reserve(window);
  ys.reserve(window);
  for (std::size_t j = m - window; j < m; ++j) {
    if (report.terms[j] > 0.0) {
      xs.push_back(std::log(static_cast<double>(j + 1)));
      ys.push_back(std::log(report.terms[j]));
    }
  }

  const double total = report.partial_sums.back();
  if (xs.size() < settings.min_terms) {
    if (xs.empty() && total <= settings.divergence_threshold) {
      report.verdict = Verdict::Convergent;
      report.notes =
          "tail identically zero: condition not met (no conclusion about irregularity)";
      return report;
    }
    report.tail_slope = 0.0;
    report.verdict =
        total > settings.divergence_threshold ? Verdict::Divergent : Verdict::Inconclusive;
    report.notes = report.verdict == Verdict::Divergent
                       ? "partial sums exceed the divergence threshold: "
                         "sufficient condition for regularity met"
                       : "too few positive tail terms for a slope estimate";
    return report;
  }

  const LinearFit fit = linear_fit(xs, ys);
  report.tail_slope = -fit.slope;
  report.tail_residual = fit.rms_residual;

  if (total > settings.divergence_threshold || report.tail_slope < 1.0 - settings.fit_margin) {
    report.verdict = Verdict::Divergent;
    report.notes = "sufficient condition for regularity met";
  } else if (report.tail_slope > 1.0 + settings.fit_margin &&
             report.tail_residual <= settings.residual_tol) {
    report.verdict = Verdict::Convergent;
    report.notes = "condition not met (no conclusion about irregularity)";
  } else {
    report.verdict = Verdict::Inconclusive;
    report.notes = "tail decay too close to the boundary exponent 1";
  }
  return report;
}

WienerReport classify_regularity(const CapacityProfile& profile, double Q, double p, double eps,
                                 const ClassifierSettings& settings) {
  require_domain(eps >= 0.0, "classify_regularity: eps must be >= 0");
  return classify_with_exponent(profile, wiener_exponent(Q, p, eps), settings);
}

PotentialBound potential_lower_bound(const CapacityProfile& profile, double delta, double c,
                                     std::ptrdiff_t k) {
  require_domain(delta > 0.0, "potential_lower_bound: delta must be positive");
  require_domain(c > 0.0, "potential_lower_bound: c must be positive");
  require_domain(k >= -1, "potential_lower_bound: k must be >= -1");
  PotentialBound bound;
  bound.delta = delta;
  bound.c = c;
  if (k < 0) return bound;  // empty sum, level 0 by convention

  const std::size_t count = static_cast<std::size_t>(k) + 1;
  require_domain(count <= profile.size(), "potential_lower_bound: k exceeds profile length");
  const std::vector<double> terms = power_terms(profile, 1.0 / delta, count);
  std::vector<double> sums(count);
  kernels::kahan_prefix_sums(terms, sums);
  bound.levels.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    bound.levels[j] = -std::expm1(-c * sums[j]);
  }
  return bound;
}

DeltaExponent delta_exponent(double Q, double p, double s) {
  require_domain(p > 1.0, "delta_exponent: p must be > 1");
  require_domain(Q >= 1.0, "delta_exponent: Q must be >= 1");
  DeltaExponent record;
  record.p = p;
  record.Q = Q;
  record.s = s;
  const double s_lo = p / (p - 1.0);
  // Q = 1 is the classical case: the equation for p1 has no finite root and
  // every s > p/(p-1) is admissible.
  record.p1 = Q - 1.0 < 1e-14 ? std::numeric_limits<double>::infinity()
                              : solve_p1(s_lo, std::pow(Q, 1.0 / p));
  if (!(s > s_lo && s < record.p1)) {
    std::ostringstream msg;
    msg << "delta_exponent: s must lie in the open interval (" << s_lo << ", " << record.p1
        << ")";
    throw domain_error(msg.str());
  }
  record.delta = p - s / (s - 1.0);
  return record;
}

double admissible_delta(double Q, double p, double s) { return delta_exponent(Q, p, s).delta; }

void write_partial_sums_csv(std::ostream& os, const WienerReport& report) {
  os << "K,S_K\n";
  char buf[64];
  for (std::size_t k = 0; k < report.partial_sums.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", report.partial_sums[k]);
    os << k << ',' << buf << '\n';
  }
}

}  // namespace qmw
