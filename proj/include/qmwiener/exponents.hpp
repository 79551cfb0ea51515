#pragma once

// Scalar exponent computations for Q-quasiminimizers of the p-energy: the
// power-law constant Q(alpha, p), its two roots alpha <= 1 <= alpha_bar, the
// auxiliary exponent p1, the dual (Q', p') correspondence and the derived
// Wiener-type exponent.  All solvers are bracketed Newton iterations on
// strictly monotone branches.

namespace qmw {

// Q(alpha, p) = alpha^p / (1 + p (alpha - 1)), for p > 1, alpha > 1 - 1/p.
// Equals 1 exactly at alpha = 1 and is > 1 elsewhere.
double q_of_alpha(double alpha, double p);

// Unique root of Q(., p) = Q in [1, inf).
double solve_alpha_bar(double Q, double p);

// Unique root of Q(., p) = Q in (1 - 1/p, 1].
double solve_alpha_lower(double Q, double p);

struct ExponentPair {
  double p;
  double Q;
  double alpha_lower;  // in (1 - 1/p, 1]
  double alpha_bar;    // in [1, inf)
};
ExponentPair exponent_pair(double Q, double p);

// Unique root x > p of t^p (x-p)/x * (x/(x-1))^p = 1, for p > 1, t > 1.
double solve_p1(double p, double t);

// beta(alpha) = alpha / (1 + p (alpha - 1)).
double beta_of_alpha(double alpha, double p);

// The four power exponents of the pair (Q, p) and its dual
// (Q' = Q^{1/(p-1)}, p' = p/(p-1)).  beta_lower/beta_bar are solved
// independently for (Q', p'); they coincide with the beta-map images of
// alpha_bar/alpha_lower up to solver tolerance.
struct DualityRecord {
  double p;
  double p_dual;
  double Q;
  double Q_dual;
  double alpha_lower;
  double alpha_bar;
  double beta_lower;
  double beta_bar;
};
DualityRecord duality_record(double Q, double p);

// alpha_bar(Q, p)/(p - 1) + eps, the exponent of the Wiener-type sum.
double wiener_exponent(double Q, double p, double eps);

// Envelope Q^{1/(p-1)} <= alpha_bar < (p Q)^{1/(p-1)}.
struct AlphaBarBounds {
  double lower;
  double upper;
};
AlphaBarBounds alpha_bar_bounds(double Q, double p);

// Admissible interval (0, p - 1/beta) for delta = p - s/(s-1), together with
// the limit value of the exponent 1/delta at the right endpoint,
// beta/(p beta - 1) = alpha_bar/(p - 1).
struct DeltaRange {
  double lower;           // always 0, open endpoint
  double upper;           // (p beta - 1)/beta, open endpoint
  double beta_lower;      // dual exponent behind the endpoint
  double exponent_limit;  // beta/(p beta - 1) == alpha_bar/(p - 1)
};
DeltaRange delta_range(double Q, double p);

// Best quasiminimizer constant of a radial power in B(0,1) \ {0}.
// PositiveExponent: |x|^alpha with p > n and alpha > 1 - n/p.
// NegativeExponent: |x|^{-gamma} with 1 < p < n and gamma > n/p - 1.
enum class PowerMode { PositiveExponent, NegativeExponent };
double best_constant_power(double exponent, double p, int n, PowerMode mode);

}  // namespace qmw
