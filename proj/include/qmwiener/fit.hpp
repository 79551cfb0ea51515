#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "qmwiener/errors.hpp"

namespace qmw {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  std::size_t count = 0;
};

// Ordinary least squares y ~ slope * x + intercept.
inline LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  require_domain(x.size() == y.size(), "linear_fit: size mismatch");
  require_domain(x.size() >= 2, "linear_fit: need at least two points");
  const std::size_t m = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require_domain(sxx > 0.0, "linear_fit: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(m));
  fit.count = m;
  return fit;
}

}  // namespace qmw
