#include "qmwiener/capacity.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qmwiener/errors.hpp"
#include "qmwiener/kernels.hpp"

namespace qmw {

namespace {

void check_condenser(const Condenser& c) {
  require_domain(c.n >= 2, "condenser: n must be >= 2");
  require_domain(c.p > 1.0 && c.p <= static_cast<double>(c.n), "condenser: need 1 < p <= n");
  require_domain(c.rho > 0.0, "condenser: inner radius must be positive");
  require_domain(c.r > c.rho, "condenser: outer radius must exceed inner radius");
}

void check_profile_params(int n, double p, double lambda, double r0) {
  require_domain(n >= 2, "profile: n must be >= 2");
  require_domain(p > 1.0 && p <= static_cast<double>(n), "profile: need 1 < p <= n");
  require_domain(lambda > 0.0 && lambda < 1.0, "profile: lambda must lie in (0,1)");
  require_domain(r0 > 0.0, "profile: r0 must be positive");
}

}  // namespace

double sphere_surface_measure(int n) {
  require_domain(n >= 1, "sphere_surface_measure: n must be >= 1");
  const double nd = static_cast<double>(n);
  return 2.0 * std::pow(M_PI, 0.5 * nd) / std::tgamma(0.5 * nd);
}

double radial_capacity(const Condenser& c) {
  check_condenser(c);
  const double omega = sphere_surface_measure(c.n);
  const double nd = static_cast<double>(c.n);
  if (c.p == nd) {
    return omega * std::pow(std::log(c.r / c.rho), 1.0 - nd);
  }
  const double expo = (c.p - nd) / (c.p - 1.0);  // negative
  const double gap = std::pow(c.rho, expo) - std::pow(c.r, expo);
  return omega * std::pow((nd - c.p) / (c.p - 1.0), c.p - 1.0) * std::pow(gap, 1.0 - c.p);
}

RadialOracleResult radial_capacity_oracle_detail(const Condenser& c, int grid_points) {
  check_condenser(c);
  require_domain(grid_points >= 100, "radial_capacity_oracle: need at least 100 grid points");
  const std::size_t m = static_cast<std::size_t>(grid_points);
  const double nd = static_cast<double>(c.n);
  const double omega = sphere_surface_measure(c.n);

  // log-spaced nodes rho = t_0 < ... < t_m = r
  std::vector<double> t(m + 1);
  const double log_ratio = std::log(c.r / c.rho);
  for (std::size_t i = 0; i <= m; ++i) {
    t[i] = c.rho * std::exp(log_ratio * static_cast<double>(i) / static_cast<double>(m));
  }
  t.back() = c.r;

  // Energy of a piecewise-linear profile with increments d_i >= 0 summing to 1:
  //   E = omega sum_i c_i d_i^p,  c_i = w_i / dt_i^p,  w_i = (t_{i+1}^n - t_i^n)/n.
  // Minimizing over the simplex gives d_i ~ c_i^{-1/(p-1)} and
  //   E_min = omega (sum_i c_i^{-1/(p-1)})^{1-p}.
  std::vector<double> ratio(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double dt = t[i + 1] - t[i];
    const double w = (std::pow(t[i + 1], nd) - std::pow(t[i], nd)) / nd;
    ratio[i] = std::pow(dt, c.p) / w;  // = 1/c_i
  }
  std::vector<double> terms(m);
  kernels::pow_terms(ratio, 1.0 / (c.p - 1.0), terms);
  const double total = kernels::pairwise_sum(terms);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw convergence_error("radial_capacity_oracle: degenerate weight sum");
  }

  RadialOracleResult out;
  out.energy = omega * std::pow(total, 1.0 - c.p);
  out.grid = std::move(t);
  out.values.resize(m + 1);
  out.values[0] = 1.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += terms[i] / total;
    out.values[i + 1] = 1.0 - acc;
  }
  out.values[m] = 0.0;
  return out;
}

double radial_capacity_oracle(const Condenser& c, int grid_points) {
  return radial_capacity_oracle_detail(c, grid_points).energy;
}

double full_ball_density(int n, double p, double lambda) {
  check_profile_params(n, p, lambda, 1.0);
  // scale-invariant: evaluate at r_j = 1
  return radial_capacity(Condenser{n, p, lambda, 1.0});
}

CapacityProfile profile_ball(int n, double p, double lambda, double r0, std::size_t count) {
  check_profile_params(n, p, lambda, r0);
  CapacityProfile profile{n, p, lambda, r0, {}};
  profile.kappa.assign(count, full_ball_density(n, p, lambda));
  return profile;
}

CapacityProfile profile_power_decay(int n, double p, double lambda, double r0, double a,
                                    double scale, std::size_t count) {
  check_profile_params(n, p, lambda, r0);
  require_domain(a >= 0.0, "profile_power_decay: decay exponent must be >= 0");
  require_domain(scale > 0.0, "profile_power_decay: scale must be positive");
  const double ceiling = full_ball_density(n, p, lambda);
  if (scale > ceiling) {
    std::ostringstream msg;
    msg << "profile_power_decay: scale " << scale << " exceeds the full-ball density "
        << ceiling;
    throw domain_error(msg.str());
  }
  CapacityProfile profile{n, p, lambda, r0, {}};
  profile.kappa.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    profile.kappa[j] = scale * std::pow(static_cast<double>(j + 1), -a);
  }
  return profile;
}

double CapacityProfile::radius(std::size_t j) const {
  return r0 * std::pow(lambda, static_cast<double>(j));
}

void write_profile_csv(std::ostream& os, const CapacityProfile& profile) {
  os << "j,r_j,kappa_j\n";
  char buf[64];
  for (std::size_t j = 0; j < profile.size(); ++j) {
    os << j << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", profile.radius(j));
    os << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", profile.kappa[j]);
    os << buf << '\n';
  }
}

CapacityProfile read_profile_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw io_error("profile csv: empty stream");
  if (line == "j,r_j,kappa_j\r") line.pop_back();
  if (line != "j,r_j,kappa_j") throw io_error("profile csv: bad header, expected j,r_j,kappa_j");

  CapacityProfile profile;
  std::vector<double> radii;
  std::size_t expected_j = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    unsigned long j = 0;
    double rj = 0.0, kj = 0.0;
    try {
      if (!std::getline(row, field, ',')) throw io_error("");
      j = std::stoul(field);
      if (!std::getline(row, field, ',')) throw io_error("");
      rj = std::stod(field);
      if (!std::getline(row, field, ',')) throw io_error("");
      kj = std::stod(field);
    } catch (const std::exception&) {
      throw io_error("profile csv: malformed row '" + line + "'");
    }
    if (j != expected_j) throw io_error("profile csv: non-contiguous index column");
    if (kj < 0.0) throw io_error("profile csv: negative kappa");
    radii.push_back(rj);
    profile.kappa.push_back(kj);
    ++expected_j;
  }
  if (profile.kappa.empty()) throw io_error("profile csv: no data rows");
  profile.r0 = radii.front();
  profile.lambda = radii.size() > 1 ? radii[1] / radii[0] : 0.5;
  return profile;
}

}  // namespace qmw
