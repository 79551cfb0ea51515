#include "qmwiener/selftest.hpp"

#include <chrono>
#include <cmath>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

#include "qmwiener/capacity.hpp"
#include "qmwiener/errors.hpp"
#include "qmwiener/exponents.hpp"
#include "qmwiener/kernels.hpp"
#include "qmwiener/onedim.hpp"
#include "qmwiener/sharpness.hpp"
#include "qmwiener/wiener.hpp"

namespace qmw::selftest {

namespace {

struct Check {
  bool ok = true;
  double worst = 0.0;
  std::string note;

  void fail(const std::string& msg) {
    if (ok) note = msg;
    ok = false;
  }
  void track(double err, double tol, const std::string& where) {
    worst = std::max(worst, err);
    if (err >= tol) {
      std::ostringstream msg;
      msg << where << ": error " << err << " >= " << tol;
      fail(msg.str());
    }
  }
};

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(step * i);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

// ---- C1: exponent identities on the (Q, p) grid -------------------------

CriterionResult c1_exponent_identities() {
  CriterionResult result{1, "exponent-identities-grid", false, 0.0, ""};
  const double tol = 1e-8;
  Check check;
  const std::vector<double> qs = log_grid(1.0, 1e3, 50);
  const std::vector<double> ps = log_grid(1.05, 10.0, 50);
  for (double p : ps) {
    const double p_dual = p / (p - 1.0);
    for (double q : qs) {
      const DualityRecord rec = duality_record(q, p);
      const double t = std::pow(q, 1.0 / p);

      // p1(p, Q^{1/p}) = 1/(1 - alpha) for the lower root, away from alpha = 1
      if (1.0 - rec.alpha_lower > 1e-4) {
        const double target = 1.0 / (1.0 - rec.alpha_lower);
        check.track(rel_err(solve_p1(p, t), target), tol, "p1-lower-root-identity");
      }
      // p1(p', Q^{1/p}) = 1/(1 - beta) for the dual lower root
      if (1.0 - rec.beta_lower > 1e-4) {
        const double target = 1.0 / (1.0 - rec.beta_lower);
        check.track(rel_err(solve_p1(p_dual, t), target), tol, "p1-dual-root-identity");
      }
      // Q(alpha,p)^{1/(p-1)} = Q(beta(alpha), p') on both branches.  The dual
      // denominator equals 1/(1 + p(alpha-1)); on the alpha_bar branch it
      // drops below double resolution once alpha_bar is huge, so the factored
      // form beta^{p'} (1 + p(alpha-1)) is checked everywhere and the direct
      // two-sided evaluation only where it carries enough bits.
      for (double alpha : {rec.alpha_lower, rec.alpha_bar}) {
        const double d = std::fma(p, alpha - 1.0, 1.0);
        const double beta = alpha / d;
        const double lhs = std::exp(std::log(q_of_alpha(alpha, p)) / (p - 1.0));
        check.track(rel_err(std::pow(beta, p_dual) * d, lhs), tol, "duality-identity");
        if (d <= 1e7) {
          check.track(rel_err(q_of_alpha(beta, p_dual), lhs), tol, "duality-identity-direct");
        }
      }
      // beta/(p beta - 1) = alpha_bar/(p - 1), evaluated through the
      // reciprocal form 1/beta = p - (p-1)/alpha_bar which stays conditioned
      // when alpha_bar is astronomically large; the direct quotient is also
      // checked wherever p beta - 1 carries enough bits.
      const double beta = beta_of_alpha(rec.alpha_bar, p);
      const double recip_lhs = 1.0 / beta;
      const double recip_rhs = p - (p - 1.0) / rec.alpha_bar;
      check.track(rel_err(recip_lhs, recip_rhs), tol, "exponent-endpoint(reciprocal)");
      if (rec.alpha_bar * p / (p - 1.0) < 1e7) {
        const double lhs = beta / std::fma(p, beta, -1.0);
        const double rhs = rec.alpha_bar / (p - 1.0);
        check.track(rel_err(lhs, rhs), tol, "exponent-endpoint");
      }
    }
  }
  std::ostringstream detail;
  detail << "50x50 grid Q in [1,1e3], p in [1.05,10]; worst rel err " << check.worst;
  if (!check.ok) detail << "; first failure: " << check.note;
  result.pass = check.ok;
  result.detail = detail.str();
  return result;
}

// ---- C2: p = 2 closed form and the alpha_bar envelope --------------------

CriterionResult c2_closed_form_p2() {
  CriterionResult result{2, "closed-form-p2-and-bounds", false, 0.0, ""};
  Check check;
  double worst_abs = 0.0;
  for (double q : log_grid(1.0, 1e3, 1000)) {
    const double solved = solve_alpha_bar(q, 2.0);
    const double closed = q + std::sqrt(q * q - q);
    const double err = std::abs(solved - closed);
    worst_abs = std::max(worst_abs, err);
    if (err >= 1e-10) {
      std::ostringstream msg;
      msg << "closed form at Q=" << q << ": |diff| = " << err;
      check.fail(msg.str());
    }
  }
  // The strict gap to the upper bound shrinks like 1/(p alpha_bar), far below
  // one ulp at the extreme corners; a small relative slack makes the check
  // meaningful at double precision.
  constexpr double slack = 1e-13;
  for (double p : log_grid(1.05, 10.0, 50)) {
    for (double q : log_grid(1.0, 1e3, 50)) {
      const double ab = solve_alpha_bar(q, p);
      const AlphaBarBounds bounds = alpha_bar_bounds(q, p);
      if (!(ab >= bounds.lower * (1.0 - slack) && ab < bounds.upper * (1.0 + slack))) {
        std::ostringstream msg;
        msg << "bounds violated at Q=" << q << " p=" << p << ": " << bounds.lower
            << " <= " << ab << " < " << bounds.upper;
        check.fail(msg.str());
      }
    }
  }
  std::ostringstream detail;
  detail << "1000 Q values at p=2, worst |solver - closed form| = " << worst_abs
         << "; envelope checked on the 50x50 grid";
  if (!check.ok) detail << "; " << check.note;
  result.pass = check.ok;
  result.detail = detail.str();
  return result;
}

// ---- C3: 1D best-constant brute force ------------------------------------

CriterionResult c3_onedim_best_constant() {
  CriterionResult result{3, "onedim-best-constant", false, 0.0, ""};
  Check check;
  const std::vector<std::pair<double, double>> cases = {
      {0.6, 2.0}, {0.8, 2.0}, {1.5, 2.0}, {2.0, 2.0}, {5.0, 2.0}, {0.75, 3.0}, {3.0, 3.0}};
  double worst = 0.0;
  for (const auto& [alpha, p] : cases) {
    const double formula = q_of_alpha(alpha, p);
    const double brute = best_constant_search(alpha, p, 400);
    const double err = std::abs(brute - formula);
    worst = std::max(worst, err);
    if (err >= 1e-3) {
      std::ostringstream msg;
      msg << "alpha=" << alpha << " p=" << p << ": |brute - formula| = " << err;
      check.fail(msg.str());
    }
  }
  std::ostringstream detail;
  detail << "7 (alpha, p) cases at grid 400, worst abs err " << worst;
  if (!check.ok) detail << "; " << check.note;
  result.pass = check.ok;
  result.detail = detail.str();
  return result;
}

// ---- C4: capacity oracle equivalence -------------------------------------

CriterionResult c4_capacity_oracle() {
  CriterionResult result{4, "capacity-oracle-equivalence", false, 0.0, ""};
  Check check;
  double worst = 0.0;
  int cases = 0;
  for (int n : {2, 3, 4}) {
    for (double p : {1.5, 2.0, 2.5, static_cast<double>(n)}) {
      if (p > n) continue;
      for (double rho : {0.1, 0.5}) {
        const Condenser c{n, p, rho, 1.0};
        const double exact = radial_capacity(c);
        const double oracle = radial_capacity_oracle(c, 10000);
        const double err = rel_err(oracle, exact);
        worst = std::max(worst, err);
        ++cases;
        if (err >= 5e-3) {
          std::ostringstream msg;
          msg << "n=" << n << " p=" << p << " rho=" << rho << ": rel err " << err;
          check.fail(msg.str());
        }
      }
    }
  }
  std::ostringstream detail;
  detail << cases << " condensers at 1e4 grid points, worst rel err " << worst;
  if (!check.ok) detail << "; " << check.note;
  result.pass = check.ok;
  result.detail = detail.str();
  return result;
}

// ---- C5: capacity comparison boundedness over the canonical sweep --------

CriterionResult c5_cap_comparison_bounded() {
  CriterionResult result{5, "capacity-comparison-bounded", false, 0.0, ""};
  const SharpnessRun run = run_sharpness(SharpnessConfig{});
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const SharpnessSample& s : run.samples) {
    const double np = static_cast<double>(run.config.n) - run.config.p;
    const double ratio = s.cap_term / std::pow(s.rho_eps, np);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double spread = hi / lo;
  std::ostringstream detail;
  detail << "canonical run eps in [" << run.samples.back().eps << ", "
         << run.samples.front().eps << "]: cap_term/rho^(n-p) spread factor " << spread
         << " (must be < 2)";
  result.pass = spread < 2.0;
  result.detail = detail.str();
  return result;
}

// ---- C6: sharpness slope matrix ------------------------------------------

CriterionResult c6_sharpness_slopes() {
  CriterionResult result{6, "sharpness-slope-matrix", false, 0.0, ""};
  Check check;
  const std::vector<std::tuple<double, double, int>> configs = {
      {4.0 / 3.0, 2.0, 3}, {2.0, 2.0, 3}, {16.0 / 7.0, 2.0, 3}, {2.0, 2.5, 4}};
  double worst = 0.0;
  std::ostringstream detail;
  for (const auto& [q, p, n] : configs) {
    SharpnessConfig config;
    config.Q = q;
    config.p = p;
    config.n = n;
    const SharpnessRun run = run_sharpness(config);
    worst = std::max(worst, run.fit_rel_err);
    detail << "(Q=" << q << ",p=" << p << ",n=" << n << "): slope " << run.fitted_slope
           << " vs " << run.target_slope << " (" << run.fit_rel_err * 100.0 << "%); ";
    if (run.fit_rel_err >= 0.02) {
      std::ostringstream msg;
      msg << "slope off by " << run.fit_rel_err * 100.0 << "% at Q=" << q;
      check.fail(msg.str());
    }
  }
  detail << "worst " << worst * 100.0 << "% (must be < 2%)";
  result.pass = check.ok;
  result.detail = detail.str();
  return result;
}

// ---- C7: iterated-estimate verdict flip ----------------------------------

CriterionResult c7_iterated_flip() {
  CriterionResult result{7, "iterated-estimate-flip", false, 0.0, ""};
  const SharpnessRun run = run_sharpness(SharpnessConfig{});
  const double np = static_cast<double>(run.config.n) - run.config.p;
  const double delta_star = np / run.gamma;
  bool ok = true;
  std::ostringstream detail;
  const std::vector<std::pair<double, IteratedVerdict>> cases = {
      {0.5, IteratedVerdict::Consistent},  {0.9, IteratedVerdict::Consistent},
      {0.99, IteratedVerdict::Consistent}, {1.0, IteratedVerdict::Boundary},
      {1.01, IteratedVerdict::Falsified},  {1.1, IteratedVerdict::Falsified},
      {2.0, IteratedVerdict::Falsified}};
  for (const auto& [factor, expected] : cases) {
    const IteratedCheck check = iterated_sharpness_check(run, factor * delta_star, 1.0, 2);
    if (check.verdict != expected) {
      ok = false;
      detail << "delta = " << factor << " * delta_star gave "
             << iterated_verdict_name(check.verdict) << " (expected "
             << iterated_verdict_name(expected) << "); ";
    }
  }
  detail << "delta_star = " << delta_star << ", verdict flips exactly there";
  result.pass = ok;
  result.detail = detail.str();
  return result;
}

// ---- C8: classifier vs p-series ground truth ------------------------------

CriterionResult c8_classifier_matrix() {
  CriterionResult result{8, "wiener-classifier-power-family", false, 0.0, ""};
  bool ok = true;
  std::ostringstream detail;
  int cases = 0;
  for (double e : {0.5, 1.0, 2.0, 3.0}) {
    for (double a : {0.1, 0.4, 1.0 / e, 0.9 / e, 1.1 / e, 2.0 / e}) {
      const CapacityProfile profile = profile_power_decay(3, 2.0, 0.5, 1.0, a, 1.0, 4000);
      const WienerReport report = classify_with_exponent(profile, e);
      const double product = a * e;
      const bool truth_divergent = product <= 1.0;
      const bool boundary_band = product > 0.95 && product < 1.05;
      ++cases;
      bool case_ok;
      if (report.verdict == Verdict::Inconclusive) {
        case_ok = boundary_band;
      } else {
        case_ok = (report.verdict == Verdict::Divergent) == truth_divergent;
      }
      if (!case_ok) {
        ok = false;
        detail << "a=" << a << " e=" << e << " (a*e=" << product << ") gave "
               << verdict_name(report.verdict) << "; ";
      }
    }
  }
  detail << cases << " classifier cases vs p-series truth (divergent iff a*e <= 1)";
  result.pass = ok;
  result.detail = detail.str();
  return result;
}

// ---- C9: potential-bound multiplicative recursion -------------------------

CriterionResult c9_recursion_invariant() {
  CriterionResult result{9, "potential-bound-recursion", false, 0.0, ""};
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> log_kappa(-6.0, 1.0);
  std::uniform_real_distribution<double> delta_dist(0.3, 3.0);
  std::uniform_real_distribution<double> c_dist(0.1, 3.0);
  double worst = 0.0;
  bool ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    CapacityProfile profile;
    profile.n = 3;
    profile.p = 2.0;
    profile.kappa.resize(64);
    for (double& k : profile.kappa) k = std::exp(log_kappa(rng));
    const double delta = delta_dist(rng);
    const double c = c_dist(rng);
    const PotentialBound bound =
        potential_lower_bound(profile, delta, c, static_cast<std::ptrdiff_t>(63));
    std::vector<double> terms(64);
    kernels::pow_terms(profile.kappa, 1.0 / delta, terms);
    for (std::size_t k = 0; k + 1 < bound.levels.size(); ++k) {
      const double lhs = 1.0 - bound.levels[k + 1];
      const double rhs = (1.0 - bound.levels[k]) * std::exp(-c * terms[k + 1]);
      const double err = std::abs(lhs - rhs);
      worst = std::max(worst, err);
      if (err >= 1e-12) ok = false;
    }
  }
  std::ostringstream detail;
  detail << "1000 random profiles, worst |(1-m_{k+1}) - (1-m_k)exp(-c kappa^{1/delta})| = "
         << worst << " (must be < 1e-12)";
  result.pass = ok;
  result.detail = detail.str();
  return result;
}

// ---- C10: classical limit of the Wiener exponent ---------------------------

CriterionResult c10_classical_limit() {
  CriterionResult result{10, "classical-limit-continuity", false, 0.0, ""};
  bool ok = true;
  double worst = 0.0;
  std::ostringstream detail;
  for (double p : {1.5, 2.0, 5.0, 10.0}) {
    const double dev = std::abs(wiener_exponent(1.0 + 1e-8, p, 0.0) - 1.0 / (p - 1.0));
    worst = std::max(worst, dev);
    detail << "p=" << p << ": deviation " << dev << "; ";
    if (dev >= 1e-6) ok = false;
  }
  detail << "gate 1e-6 at Q = 1+1e-8. Note: alpha_bar - 1 scales like "
            "sqrt(2(Q-1)/(p(p-1))), so the deviation is ~1e-4 at p=2 and >= 1.6e-6 "
            "for every p <= 10; this check is expected to stay red.";
  result.pass = ok;
  result.detail = detail.str();
  return result;
}

using Runner = CriterionResult (*)();
constexpr Runner kRunners[] = {
    c1_exponent_identities, c2_closed_form_p2,  c3_onedim_best_constant,
    c4_capacity_oracle,     c5_cap_comparison_bounded, c6_sharpness_slopes,
    c7_iterated_flip,       c8_classifier_matrix, c9_recursion_invariant,
    c10_classical_limit,
};

// per-criterion wall-clock ceilings, 0 = unconstrained
constexpr double kTimeLimits[] = {5.0, 0.0, 30.0, 10.0, 0.0, 5.0, 0.0, 0.0, 0.0, 0.0};

}  // namespace

int criterion_count() { return static_cast<int>(std::size(kRunners)); }

CriterionResult run_criterion(int id) {
  if (id < 1 || id > criterion_count()) {
    throw domain_error("selftest: criterion id must be in [1, " +
                       std::to_string(criterion_count()) + "]");
  }
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result = kRunners[id - 1]();
  const auto stop = std::chrono::steady_clock::now();
  result.seconds = std::chrono::duration<double>(stop - start).count();
  const double limit = kTimeLimits[id - 1];
  if (limit > 0.0 && result.seconds >= limit) {
    result.pass = false;
    std::ostringstream msg;
    msg << result.detail << "; runtime " << result.seconds << "s exceeded the " << limit
        << "s budget";
    result.detail = msg.str();
  }
  return result;
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> results;
  results.reserve(criterion_count());
  for (int id = 1; id <= criterion_count(); ++id) results.push_back(run_criterion(id));
  return results;
}

}  // namespace qmw::selftest
