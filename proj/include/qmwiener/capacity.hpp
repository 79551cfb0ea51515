#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace qmw {

// Surface measure of the unit sphere in R^n, omega_{n-1} = 2 pi^{n/2} / Gamma(n/2).
double sphere_surface_measure(int n);

// Concentric spherical condenser (closed inner ball of radius rho inside the
// open ball of radius r) in R^n with energy exponent p.
struct Condenser {
  int n;       // dimension >= 2
  double p;    // 1 < p <= n
  double rho;  // inner radius, 0 < rho < r
  double r;    // outer radius
};

// Exact variational p-capacity of the condenser:
//   1 < p < n:  omega ((n-p)/(p-1))^{p-1} (rho^{(p-n)/(p-1)} - r^{(p-n)/(p-1)})^{1-p}
//   p = n:      omega (log(r/rho))^{1-n}
double radial_capacity(const Condenser& c);

// Independent check: exact minimum of the discretized radial p-energy over
// piecewise-linear profiles on a log-spaced grid with u(rho) = 1, u(r) = 0.
// The per-cell weights integrate t^{n-1} exactly and the convex minimum over
// the node increments has a closed form, so the value is the true discrete
// minimum; it decreases towards the capacity under grid refinement.
struct RadialOracleResult {
  double energy;
  std::vector<double> grid;    // node radii, size grid_points + 1
  std::vector<double> values;  // minimizing profile at the nodes
};
RadialOracleResult radial_capacity_oracle_detail(const Condenser& c, int grid_points);
double radial_capacity_oracle(const Condenser& c, int grid_points);

// Normalized capacity densities kappa_j = cp_p(K cap closed B_{j+1}, B_j) / r_j^{n-p}
// at radii r_j = r0 lambda^j.  Profiles coming from a CSV file carry n = 0.
struct CapacityProfile {
  int n = 0;
  double p = 0.0;
  double lambda = 0.5;
  double r0 = 1.0;
  std::vector<double> kappa;

  std::size_t size() const { return kappa.size(); }
  double radius(std::size_t j) const;
};

// kappa_j for the full-ball complement; constant in j by capacity scaling.
CapacityProfile profile_ball(int n, double p, double lambda, double r0, std::size_t count);

// Model family kappa_j = scale (j+1)^{-a} mimicking thin complements; scale
// must not exceed the full-ball density.
CapacityProfile profile_power_decay(int n, double p, double lambda, double r0, double a,
                                    double scale, std::size_t count);

// The constant kappa of profile_ball, the ceiling for any admissible profile.
double full_ball_density(int n, double p, double lambda);

// CSV serialization, header "j,r_j,kappa_j".
void write_profile_csv(std::ostream& os, const CapacityProfile& profile);
CapacityProfile read_profile_csv(std::istream& is);

}  // namespace qmw
