#pragma once

namespace qmw {

// Energy comparison for u(t) = t^alpha on a subinterval [a, b] of (0, 1):
// the p-energy of u against the p-energy of the affine function with the
// same endpoint values (the 1D minimizer).  Both integrals are closed form.
struct PowerEnergyRatio {
  double alpha;
  double p;
  double a;
  double b;
  double energy_power;
  double energy_linear;
  double ratio;  // energy_power / energy_linear, >= 1
};
PowerEnergyRatio energy_ratio_detail(double alpha, double p, double a, double b);
double energy_ratio(double alpha, double p, double a, double b);

// Brute-force recovery of the best quasiminimizer constant of t^alpha on
// (0, 1): maximize energy_ratio over the simplex 0 <= a < b <= 1 on a
// uniform grid (with the a = 0 row included exactly) and refine the winner
// by coordinate-wise golden-section search.  Converges to Q(alpha, p) from
// below as the grid refines.
double best_constant_search(double alpha, double p, int grid);

}  // namespace qmw
