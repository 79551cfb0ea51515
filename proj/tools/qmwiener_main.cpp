// qmwiener: exponents, capacities, Wiener-type sums and the sharpness sweep
// for Q-quasiminimizers of the p-energy, with CSV/JSON output.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmwiener/capacity.hpp"
#include "qmwiener/errors.hpp"
#include "qmwiener/exponents.hpp"
#include "qmwiener/io.hpp"
#include "qmwiener/kernels.hpp"
#include "qmwiener/onedim.hpp"
#include "qmwiener/rootfind.hpp"
#include "qmwiener/selftest.hpp"
#include "qmwiener/sharpness.hpp"
#include "qmwiener/wiener.hpp"

#include <fstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitIo = 4;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const std::string& payload, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << payload;
  } else {
    qmw::io::write_text_file(output_path, payload);
  }
}

struct GlobalOptions {
  std::string output;
  std::string format = "json";
  std::string kernel = "auto";
  double tolerance = 0.0;  // 0 keeps the solver default
};

void apply_globals(const GlobalOptions& opts) {
  if (opts.kernel == "scalar") {
    qmw::kernels::set_backend(qmw::kernels::Backend::Scalar);
  } else if (opts.kernel == "simd") {
    qmw::kernels::set_backend(qmw::kernels::Backend::Simd);
  } else {
    qmw::kernels::set_backend(qmw::kernels::Backend::Auto);
  }
  if (opts.tolerance > 0.0) qmw::solver_options().abs_tol = opts.tolerance;
}

qmw::CapacityProfile make_profile(const std::string& kind, int n, double p, double lambda,
                                  double r0, double a, double scale, std::size_t count,
                                  const std::string& csv_path) {
  if (kind == "ball") return qmw::profile_ball(n, p, lambda, r0, count);
  if (kind == "power") return qmw::profile_power_decay(n, p, lambda, r0, a, scale, count);
  if (kind == "csv") {
    std::ifstream is(csv_path);
    if (!is) throw qmw::io_error("cannot open profile csv '" + csv_path + "'");
    return qmw::read_profile_csv(is);
  }
  throw qmw::domain_error("unknown profile kind '" + kind + "' (ball|power|csv)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wiener-type boundary regularity toolkit for p-energy quasiminimizers"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOptions globals;
  app.add_option("--output", globals.output, "Write the main document to this path");
  app.add_option("--format", globals.format, "Main document format (json|csv)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tolerance", globals.tolerance, "Root-solver absolute tolerance override");
  app.add_option("--kernel", globals.kernel, "Array kernel engine (auto|scalar|simd)")
      ->check(CLI::IsMember({"auto", "scalar", "simd"}));

  // ---- exponents ----------------------------------------------------------
  auto* cmd_exp = app.add_subcommand("exponents", "Exponents and duality record for (Q, p)");
  std::string exp_q = "4/3", exp_p = "2";
  std::string exp_eps = "0";
  cmd_exp->add_option("--Q", exp_q, "Quasiminimizer constant, decimal or num/den")->required();
  cmd_exp->add_option("--p", exp_p, "Energy exponent, decimal or num/den")->required();
  cmd_exp->add_option("--eps", exp_eps, "Extra eps added to the Wiener exponent");

  // ---- capacity -----------------------------------------------------------
  auto* cmd_cap = app.add_subcommand("capacity", "Radial condenser capacity or kappa profiles");
  std::string cap_p = "2", cap_rho = "0.5", cap_r = "1";
  int cap_n = 3;
  int cap_oracle_grid = 0;
  std::string cap_profile;
  std::string cap_lambda = "0.5", cap_r0 = "1", cap_a = "0", cap_scale = "1";
  std::size_t cap_count = 50;
  cmd_cap->add_option("--n", cap_n, "Dimension");
  cmd_cap->add_option("--p", cap_p, "Energy exponent");
  cmd_cap->add_option("--rho", cap_rho, "Inner radius");
  cmd_cap->add_option("--r", cap_r, "Outer radius");
  cmd_cap->add_option("--oracle-grid", cap_oracle_grid,
                      "Also run the discrete energy oracle at this many grid points");
  cmd_cap->add_option("--profile", cap_profile,
                      "Emit a kappa profile (ball|power) as CSV instead of a point value");
  cmd_cap->add_option("--lambda", cap_lambda, "Radii ratio of the profile");
  cmd_cap->add_option("--r0", cap_r0, "Initial radius of the profile");
  cmd_cap->add_option("--a", cap_a, "Decay exponent of the power profile");
  cmd_cap->add_option("--scale", cap_scale, "Scale of the power profile");
  cmd_cap->add_option("--count", cap_count, "Number of profile terms");

  // ---- wiener -------------------------------------------------------------
  auto* cmd_wiener = app.add_subcommand("wiener", "Wiener-type sum classification");
  std::string wnr_profile = "ball", wnr_csv_input;
  std::string wnr_q = "4/3", wnr_p = "2", wnr_eps = "0";
  std::string wnr_lambda = "0.5", wnr_r0 = "1", wnr_a = "0", wnr_scale = "1";
  std::size_t wnr_count = 2000;
  int wnr_n = 3;
  std::optional<std::size_t> wnr_k;
  std::string wnr_sums_csv;
  cmd_wiener->add_option("--profile", wnr_profile, "Profile source (ball|power|csv)");
  cmd_wiener->add_option("--csv-input", wnr_csv_input, "Profile CSV path for --profile csv");
  cmd_wiener->add_option("--Q", wnr_q, "Quasiminimizer constant")->required();
  cmd_wiener->add_option("--p", wnr_p, "Energy exponent")->required();
  cmd_wiener->add_option("--eps", wnr_eps, "Extra eps in the Wiener exponent");
  cmd_wiener->add_option("--n", wnr_n, "Dimension of generated profiles");
  cmd_wiener->add_option("--lambda", wnr_lambda, "Radii ratio of generated profiles");
  cmd_wiener->add_option("--r0", wnr_r0, "Initial radius of generated profiles");
  cmd_wiener->add_option("--a", wnr_a, "Decay exponent of the power profile");
  cmd_wiener->add_option("--scale", wnr_scale, "Scale of the power profile");
  cmd_wiener->add_option("--count", wnr_count, "Number of generated profile terms");
  cmd_wiener->add_option("--K", wnr_k, "Truncate the sum at index K");
  cmd_wiener->add_option("--sums-csv", wnr_sums_csv, "Also write partial sums as CSV here");
  std::string wnr_delta, wnr_c = "1";
  cmd_wiener->add_option("--delta", wnr_delta,
                         "Also compute the potential lower bound at this delta");
  cmd_wiener->add_option("--c", wnr_c, "Constant c of the potential lower bound");

  // ---- verify-power ---------------------------------------------------------
  auto* cmd_verify = app.add_subcommand(
      "verify-power", "Brute-force 1D check of the best power quasiminimizer constant");
  std::vector<std::string> verify_alphas;
  std::string verify_p = "2";
  int verify_grid = 400;
  cmd_verify->add_option("--alpha", verify_alphas, "Power exponents (repeat or comma-separate)")
      ->required()
      ->delimiter(',');
  cmd_verify->add_option("--p", verify_p, "Energy exponent");
  cmd_verify->add_option("--grid", verify_grid, "Grid subdivisions per axis");

  // ---- sharpness ------------------------------------------------------------
  auto* cmd_sharp = app.add_subcommand("sharpness", "Truncated power-potential sweep and slope fit");
  std::string shp_q = "4/3", shp_p = "2";
  int shp_n = 3;
  std::string shp_ball = "1/3";
  std::size_t shp_points = 40;
  std::string shp_rho_min = "1e-4", shp_rho_max = "0.1";
  std::string shp_eps_min, shp_eps_max;
  std::string shp_sweep_csv;
  std::string shp_check_delta;
  double shp_check_c = 1.0;
  int shp_check_k = 2;
  cmd_sharp->add_option("--Q", shp_q, "Quasiminimizer constant")->required();
  cmd_sharp->add_option("--p", shp_p, "Energy exponent")->required();
  cmd_sharp->add_option("--n", shp_n, "Dimension (p < n)")->required();
  cmd_sharp->add_option("--ball-radius", shp_ball, "Radius of B; the potential lives in 3B");
  cmd_sharp->add_option("--points", shp_points, "Sweep size");
  cmd_sharp->add_option("--rho-min", shp_rho_min, "Lower end of the inner-radius window");
  cmd_sharp->add_option("--rho-max", shp_rho_max, "Upper end of the inner-radius window");
  cmd_sharp->add_option("--eps-min", shp_eps_min, "Explicit eps lower end (overrides rho window)");
  cmd_sharp->add_option("--eps-max", shp_eps_max, "Explicit eps upper end (overrides rho window)");
  cmd_sharp->add_option("--csv", shp_sweep_csv, "Write the per-eps sweep as CSV here");
  cmd_sharp->add_option("--check-delta", shp_check_delta,
                        "Also test the iterated estimate at this delta");
  cmd_sharp->add_option("--check-c", shp_check_c, "Constant c of the iterated estimate");
  cmd_sharp->add_option("--check-k", shp_check_k, "Ball index k of the iterated estimate");

  // ---- selftest ---------------------------------------------------------------
  auto* cmd_selftest =
      app.add_subcommand("selftest", "Run the acceptance suite, one PASS/FAIL line per criterion");
  int selftest_id = 0;
  cmd_selftest->add_option("--criterion", selftest_id, "Run a single criterion (1-based)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    apply_globals(globals);

    if (*cmd_exp) {
      const double q = qmw::io::parse_real(exp_q);
      const double p = qmw::io::parse_real(exp_p);
      const double eps = qmw::io::parse_real(exp_eps);
      emit(qmw::io::dump(qmw::io::exponents_report(q, p, eps)), globals.output);
      return kExitOk;
    }

    if (*cmd_cap) {
      if (!cap_profile.empty()) {
        const qmw::CapacityProfile profile = make_profile(
            cap_profile, cap_n, qmw::io::parse_real(cap_p), qmw::io::parse_real(cap_lambda),
            qmw::io::parse_real(cap_r0), qmw::io::parse_real(cap_a),
            qmw::io::parse_real(cap_scale), cap_count, "");
        std::ostringstream csv;
        qmw::write_profile_csv(csv, profile);
        emit(csv.str(), globals.output);
        return kExitOk;
      }
      const qmw::Condenser c{cap_n, qmw::io::parse_real(cap_p), qmw::io::parse_real(cap_rho),
                             qmw::io::parse_real(cap_r)};
      emit(qmw::io::dump(qmw::io::capacity_report(c, cap_oracle_grid)), globals.output);
      return kExitOk;
    }

    if (*cmd_wiener) {
      const qmw::CapacityProfile profile = make_profile(
          wnr_profile, wnr_n, qmw::io::parse_real(wnr_p), qmw::io::parse_real(wnr_lambda),
          qmw::io::parse_real(wnr_r0), qmw::io::parse_real(wnr_a),
          qmw::io::parse_real(wnr_scale), wnr_count, wnr_csv_input);
      const double q = qmw::io::parse_real(wnr_q);
      const double p = qmw::io::parse_real(wnr_p);
      const double eps = qmw::io::parse_real(wnr_eps);
      qmw::CapacityProfile truncated = profile;
      if (wnr_k) {
        if (*wnr_k + 1 > profile.size()) {
          throw qmw::domain_error("wiener: K exceeds the profile length");
        }
        truncated.kappa.resize(*wnr_k + 1);
      }
      const qmw::WienerReport report = qmw::classify_regularity(truncated, q, p, eps);
      if (!wnr_sums_csv.empty()) {
        std::ostringstream csv;
        qmw::write_partial_sums_csv(csv, report);
        qmw::io::write_text_file(wnr_sums_csv, csv.str());
      }
      if (globals.format == "csv") {
        std::ostringstream csv;
        qmw::write_partial_sums_csv(csv, report);
        emit(csv.str(), globals.output);
      } else {
        qmw::io::json doc = qmw::io::wiener_report_json(report);
        if (!wnr_delta.empty()) {
          const qmw::PotentialBound bound = qmw::potential_lower_bound(
              truncated, qmw::io::parse_real(wnr_delta), qmw::io::parse_real(wnr_c),
              static_cast<std::ptrdiff_t>(truncated.size()) - 1);
          doc["potential_bound"] = qmw::io::json{{"delta", bound.delta},
                                                 {"c", bound.c},
                                                 {"levels", bound.levels},
                                                 {"final_level", bound.final_level()}};
        }
        emit(qmw::io::dump(doc), globals.output);
      }
      return kExitOk;
    }

    if (*cmd_verify) {
      const double p = qmw::io::parse_real(verify_p);
      std::ostringstream csv;
      csv << "alpha,p,Q_formula,Q_bruteforce,abs_err\n";
      for (const std::string& alpha_text : verify_alphas) {
        const double alpha = qmw::io::parse_real(alpha_text);
        const double formula = qmw::q_of_alpha(alpha, p);
        const double brute = qmw::best_constant_search(alpha, p, verify_grid);
        csv << g17(alpha) << ',' << g17(p) << ',' << g17(formula) << ',' << g17(brute) << ','
            << g17(std::abs(brute - formula)) << '\n';
      }
      emit(csv.str(), globals.output);
      return kExitOk;
    }

    if (*cmd_sharp) {
      qmw::SharpnessConfig config;
      config.Q = qmw::io::parse_real(shp_q);
      config.p = qmw::io::parse_real(shp_p);
      config.n = shp_n;
      config.ball_radius = qmw::io::parse_real(shp_ball);
      config.points = shp_points;
      config.rho_min = qmw::io::parse_real(shp_rho_min);
      config.rho_max = qmw::io::parse_real(shp_rho_max);
      if (!shp_eps_min.empty() || !shp_eps_max.empty()) {
        if (shp_eps_min.empty() || shp_eps_max.empty()) {
          throw qmw::domain_error("sharpness: give both --eps-min and --eps-max or neither");
        }
        config.eps_range = {qmw::io::parse_real(shp_eps_min), qmw::io::parse_real(shp_eps_max)};
      }
      const qmw::SharpnessRun run = qmw::run_sharpness(config);
      if (!shp_sweep_csv.empty()) {
        std::ostringstream csv;
        csv << "eps,rho_eps,inf_u,cap_term\n";
        for (const qmw::SharpnessSample& s : run.samples) {
          csv << g17(s.eps) << ',' << g17(s.rho_eps) << ',' << g17(s.inf_2b) << ','
              << g17(s.cap_term) << '\n';
        }
        qmw::io::write_text_file(shp_sweep_csv, csv.str());
      }
      qmw::io::json doc = qmw::io::sharpness_report(run);
      if (!shp_check_delta.empty()) {
        const qmw::IteratedCheck check = qmw::iterated_sharpness_check(
            run, qmw::io::parse_real(shp_check_delta), shp_check_c, shp_check_k);
        doc["iterated_check"] = qmw::io::json{{"delta", check.delta},
                                              {"delta_star", check.delta_star},
                                              {"k", check.k},
                                              {"ratio_slope", check.ratio_slope},
                                              {"verdict", qmw::iterated_verdict_name(check.verdict)}};
      }
      emit(qmw::io::dump(doc), globals.output);
      return kExitOk;
    }

    if (*cmd_selftest) {
      std::vector<qmw::selftest::CriterionResult> results;
      if (selftest_id > 0) {
        results.push_back(qmw::selftest::run_criterion(selftest_id));
      } else {
        results = qmw::selftest::run_all();
      }
      int failed = 0;
      std::ostringstream text;
      for (const auto& r : results) {
        if (!r.pass) ++failed;
        char line[128];
        std::snprintf(line, sizeof(line), "C%02d %-32s %s (%.2fs)", r.id, r.name.c_str(),
                      r.pass ? "PASS" : "FAIL", r.seconds);
        text << line << '\n';
        if (!r.pass) text << "     " << r.detail << '\n';
      }
      text << failed << " of " << results.size() << " criteria failed\n";
      if (globals.format == "json") {
        qmw::io::json doc;
        doc["schema"] = "qmwiener/selftest/v1";
        doc["results"] = qmw::io::json::array();
        for (const auto& r : results) {
          doc["results"].push_back(qmw::io::json{{"id", r.id},
                                                 {"name", r.name},
                                                 {"pass", r.pass},
                                                 {"seconds", r.seconds},
                                                 {"detail", r.detail}});
        }
        doc["failed"] = failed;
        if (!globals.output.empty()) qmw::io::write_text_file(globals.output, qmw::io::dump(doc));
      }
      std::cout << text.str();
      return failed == 0 ? kExitOk : 1;
    }
  } catch (const qmw::convergence_error& e) {
    std::cerr << "error (convergence): " << e.what() << '\n';
    return kExitConvergence;
  } catch (const qmw::io_error& e) {
    std::cerr << "error (io): " << e.what() << '\n';
    return kExitIo;
  } catch (const qmw::domain_error& e) {
    std::cerr << "error (validation): " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
