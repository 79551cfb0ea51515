#include "qmwiener/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "qmwiener/errors.hpp"

namespace qmw::io {

double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      std::size_t used = 0;
      const double value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return value;
    }
    std::size_t used_num = 0, used_den = 0;
    const std::string num_text = text.substr(0, slash);
    const std::string den_text = text.substr(slash + 1);
    const double num = std::stod(num_text, &used_num);
    const double den = std::stod(den_text, &used_den);
    if (used_num != num_text.size() || used_den != den_text.size() || den == 0.0) {
      throw std::invalid_argument(text);
    }
    return num / den;
  } catch (const std::exception&) {
    throw domain_error("cannot parse number '" + text + "' (use a decimal or num/den)");
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);  // binary keeps LF endings
  if (!os) throw io_error("cannot open '" + path + "' for writing");
  os << content;
  if (!os) throw io_error("failed writing '" + path + "'");
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json exponents_report(double Q, double p, double eps) {
  const DualityRecord rec = duality_record(Q, p);
  const AlphaBarBounds bounds = alpha_bar_bounds(Q, p);
  const DeltaRange range = delta_range(Q, p);
  const double p1 = Q - 1.0 < 1e-14
                        ? std::numeric_limits<double>::infinity()
                        : solve_p1(p / (p - 1.0), std::pow(Q, 1.0 / p));
  json doc;
  doc["schema"] = "qmwiener/exponents/v1";
  doc["p"] = p;
  doc["Q"] = Q;
  doc["alpha_lower"] = rec.alpha_lower;
  doc["alpha_bar"] = rec.alpha_bar;
  doc["beta_lower"] = rec.beta_lower;
  doc["beta_bar"] = rec.beta_bar;
  doc["p_dual"] = rec.p_dual;
  doc["Q_dual"] = rec.Q_dual;
  if (std::isfinite(p1)) {
    doc["p1"] = p1;
  } else {
    doc["p1"] = "inf";  // Q = 1: no finite endpoint
  }
  doc["eps"] = eps;
  doc["wiener_exponent"] = wiener_exponent(Q, p, eps);
  doc["bounds"] = json{{"lower", bounds.lower}, {"upper", bounds.upper}};
  doc["delta_range"] = json{{"lower", range.lower}, {"upper", range.upper}};
  return doc;
}

json capacity_report(const Condenser& c, int oracle_grid_points) {
  const double exact = radial_capacity(c);
  json doc;
  doc["schema"] = "qmwiener/capacity/v1";
  doc["n"] = c.n;
  doc["p"] = c.p;
  doc["rho"] = c.rho;
  doc["r"] = c.r;
  doc["capacity"] = exact;
  if (oracle_grid_points > 0) {
    const double oracle = radial_capacity_oracle(c, oracle_grid_points);
    doc["oracle"] = json{{"grid_points", oracle_grid_points},
                         {"energy", oracle},
                         {"rel_err", std::abs(oracle - exact) / exact}};
  }
  return doc;
}

json wiener_report_json(const WienerReport& report) {
  json doc;
  doc["schema"] = "qmwiener/wiener_report/v1";
  doc["exponent"] = report.exponent;
  doc["terms"] = report.terms;
  doc["partial_sums"] = report.partial_sums;
  doc["tail_slope"] = report.tail_slope;
  doc["tail_residual"] = report.tail_residual;
  doc["verdict"] = verdict_name(report.verdict);
  doc["notes"] = report.notes;
  return doc;
}

json sharpness_report(const SharpnessRun& run) {
  json doc;
  doc["schema"] = "qmwiener/sharpness/v1";
  doc["Q"] = run.config.Q;
  doc["p"] = run.config.p;
  doc["n"] = run.config.n;
  doc["ball_radius"] = run.config.ball_radius;
  doc["points"] = run.samples.size();
  doc["eps_max"] = run.samples.front().eps;
  doc["eps_min"] = run.samples.back().eps;
  doc["gamma"] = run.gamma;
  doc["alpha_bar"] = run.alpha_bar;
  doc["fitted_slope"] = run.fitted_slope;
  doc["target_slope"] = run.target_slope;
  doc["rel_err"] = run.fit_rel_err;
  return doc;
}

}  // namespace qmw::io
