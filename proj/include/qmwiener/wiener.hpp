#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qmwiener/capacity.hpp"

namespace qmw {

enum class Verdict { Divergent, Convergent, Inconclusive };
std::string verdict_name(Verdict v);

// Thresholds of the divergence classifier.  A numerical sum can never prove
// divergence; the tail-slope test plus a large-sum escape hatch gives
// reproducible verdicts with an explicit inconclusive band.
struct ClassifierSettings {
  double fit_margin = 0.05;           // |slope - 1| band treated as boundary
  double divergence_threshold = 1e3;  // partial sum beyond this forces Divergent
  double residual_tol = 0.1;          // rms log-residual for a trustworthy tail fit
  std::size_t min_terms = 10;         // smallest usable profile / fit window
};

// Partial sums S_K = sum_{j<=K} kappa_j^e, K = 0..K_max, Kahan-compensated.
std::vector<double> wiener_partial_sums(const CapacityProfile& profile, double e,
                                        std::size_t k_max);

struct WienerReport {
  double exponent = 0.0;
  std::vector<double> terms;         // kappa_j^e
  std::vector<double> partial_sums;  // S_0..S_K
  double tail_slope = 0.0;           // fitted b in kappa_j^e ~ C j^{-b}
  double tail_residual = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string notes;
};

// Classify the sum at an explicitly given exponent e > 0.
WienerReport classify_with_exponent(const CapacityProfile& profile, double e,
                                    const ClassifierSettings& settings = {});

// Classify at e = alpha_bar(Q,p)/(p-1) + eps.  Divergent means the sufficient
// condition for regularity is met; Convergent only means this condition
// fails and says nothing about irregularity.
WienerReport classify_regularity(const CapacityProfile& profile, double Q, double p,
                                 double eps, const ClassifierSettings& settings = {});

// Iterated potential estimate: m_k = 1 - exp(-c sum_{j<=k} kappa_j^{1/delta}).
struct PotentialBound {
  double delta = 0.0;
  double c = 0.0;
  std::vector<double> levels;  // m_0..m_k; empty for k = -1
  double final_level() const { return levels.empty() ? 0.0 : levels.back(); }
};
PotentialBound potential_lower_bound(const CapacityProfile& profile, double delta, double c,
                                     std::ptrdiff_t k);

// delta = p - s/(s-1) for s inside (p/(p-1), p1(p/(p-1), Q^{1/p})).
struct DeltaExponent {
  double p = 0.0;
  double Q = 0.0;
  double s = 0.0;
  double delta = 0.0;
  double p1 = 0.0;  // right endpoint of the admissible s-interval
};
DeltaExponent delta_exponent(double Q, double p, double s);
double admissible_delta(double Q, double p, double s);

// CSV export "K,S_K".
void write_partial_sums_csv(std::ostream& os, const WienerReport& report);

}  // namespace qmw
