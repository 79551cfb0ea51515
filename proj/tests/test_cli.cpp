// End-to-end checks of the qmwiener binary: exit codes, output files,
// schema conformance and byte-level determinism.
// Usage: qmwiener_cli_test <path-to-qmwiener> <schemas-dir>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "schema_lite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cerr << "FAILED: " << what << '\n';
  }
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& cmd, const fs::path& capture) {
  const std::string full = cmd + " > " + capture.string() + " 2>/dev/null";
  const int status = std::system(full.c_str());
  RunResult result{-1, ""};
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  std::ifstream is(capture);
  std::stringstream buffer;
  buffer << is.rdbuf();
  result.output = buffer.str();
  return result;
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path);
  std::stringstream buffer;
  buffer << is.rdbuf();
  return buffer.str();
}

bool validate_schema(const json& doc, const fs::path& schema_path, std::string& error) {
  return schema_lite::validate(schema_lite::load(schema_path.string()), doc, error);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: qmwiener_cli_test <binary> <schemas-dir>\n";
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path schemas = argv[2];
  const fs::path work = fs::temp_directory_path() / "qmwiener_cli_test";
  fs::remove_all(work);
  fs::create_directories(work);
  const fs::path cap = work / "stdout.txt";
  std::string error;

  // exponents: happy path, schema, pinned value
  {
    auto r = run(bin + " exponents --Q 4/3 --p 2", cap);
    expect(r.exit_code == 0, "exponents exit code");
    const json doc = json::parse(r.output);
    expect(validate_schema(doc, schemas / "exponents.v1.schema.json", error),
           "exponents schema: " + error);
    expect(std::abs(doc["alpha_bar"].get<double>() - 2.0) < 1e-10, "alpha_bar = 2");
  }

  // exponents: validation failure names the precondition and exits 2
  {
    auto r = run(bin + " exponents --Q 0.5 --p 2", cap);
    expect(r.exit_code == 2, "Q < 1 exits 2");
  }
  {
    auto r = run(bin + " exponents --Q 2 --p 1", cap);
    expect(r.exit_code == 2, "p <= 1 exits 2");
  }

  // determinism: identical configs give bit-identical files
  {
    const fs::path out1 = work / "exp1.json";
    const fs::path out2 = work / "exp2.json";
    run(bin + " --output " + out1.string() + " exponents --Q 16/7 --p 2 --eps 0.25", cap);
    run(bin + " --output " + out2.string() + " exponents --Q 16/7 --p 2 --eps 0.25", cap);
    expect(slurp(out1) == slurp(out2), "bit-identical exponents output");
    expect(!slurp(out1).empty(), "exponents output nonempty");
  }

  // capacity: point value with oracle
  {
    auto r = run(bin + " capacity --n 3 --p 2 --rho 1 --r 2 --oracle-grid 1000", cap);
    expect(r.exit_code == 0, "capacity exit code");
    const json doc = json::parse(r.output);
    expect(validate_schema(doc, schemas / "capacity.v1.schema.json", error),
           "capacity schema: " + error);
    expect(std::abs(doc["capacity"].get<double>() - 8.0 * M_PI) < 1e-10, "capacity = 8 pi");
    expect(doc["oracle"]["rel_err"].get<double>() < 5e-3, "oracle close to closed form");
  }

  // capacity profile -> CSV -> wiener csv input round trip
  {
    const fs::path prof = work / "profile.csv";
    auto r = run(bin + " --output " + prof.string() +
                     " capacity --profile ball --n 3 --p 2 --lambda 0.5 --count 50",
                 cap);
    expect(r.exit_code == 0, "profile generation exit code");
    const std::string csv = slurp(prof);
    expect(csv.rfind("j,r_j,kappa_j\n", 0) == 0, "profile csv header");

    auto w = run(bin + " wiener --profile csv --csv-input " + prof.string() +
                     " --Q 4/3 --p 2 --eps 0",
                 cap);
    expect(w.exit_code == 0, "wiener csv-input exit code");
    const json doc = json::parse(w.output);
    expect(validate_schema(doc, schemas / "wiener_report.v1.schema.json", error),
           "wiener schema: " + error);
    expect(doc["verdict"] == "DIVERGENT", "ball profile diverges");
  }

  // wiener: p-series verdicts through the CLI (e = 2 at Q=4/3, p=2, eps=0)
  {
    auto r = run(bin + " wiener --profile power --a 1 --scale 1 --count 4000 --Q 4/3 --p 2 --eps 0",
                 cap);
    expect(r.exit_code == 0, "wiener power exit code");
    expect(json::parse(r.output)["verdict"] == "CONVERGENT", "a*e = 2 converges");
  }
  {
    auto r = run(bin +
                     " wiener --profile power --a 0.25 --scale 1 --count 4000 --Q 4/3 --p 2 "
                     "--eps 0",
                 cap);
    expect(json::parse(r.output)["verdict"] == "DIVERGENT", "a*e = 1/2 diverges");
  }

  // wiener: optional potential lower bound block
  {
    auto r = run(bin +
                     " wiener --profile ball --count 32 --Q 4/3 --p 2 --eps 0 --delta 1 --c 1",
                 cap);
    expect(r.exit_code == 0, "wiener --delta exit code");
    const json doc = json::parse(r.output);
    expect(validate_schema(doc, schemas / "wiener_report.v1.schema.json", error),
           "wiener potential-bound schema: " + error);
    expect(doc["potential_bound"]["levels"].size() == 32, "potential bound levels");
    expect(doc["potential_bound"]["final_level"].get<double>() > 0.999,
           "divergent profile drives the bound towards 1");
  }

  // wiener: partial sums as CSV
  {
    const fs::path sums = work / "sums.csv";
    auto r = run(bin + " --format csv --output " + sums.string() +
                     " wiener --profile power --a 1 --scale 1 --count 64 --Q 4/3 --p 2 --eps 0",
                 cap);
    expect(r.exit_code == 0, "wiener csv format exit code");
    expect(slurp(sums).rfind("K,S_K\n", 0) == 0, "partial sums csv header");
  }

  // verify-power: table rows under the 1e-3 gate
  {
    auto r = run(bin + " verify-power --alpha 0.8,2 --p 2 --grid 100", cap);
    expect(r.exit_code == 0, "verify-power exit code");
    std::istringstream is(r.output);
    std::string line;
    std::getline(is, line);
    expect(line == "alpha,p,Q_formula,Q_bruteforce,abs_err", "verify-power header");
    int rows = 0;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      ++rows;
      const auto last_comma = line.rfind(',');
      expect(std::stod(line.substr(last_comma + 1)) < 1e-3, "abs_err below 1e-3");
    }
    expect(rows == 2, "verify-power row count");
  }

  // sharpness: JSON summary + CSV sweep, canonical slope within 2%
  {
    const fs::path sweep = work / "sweep.csv";
    const fs::path summary = work / "sharpness.json";
    auto r = run(bin + " --output " + summary.string() + " sharpness --Q 4/3 --p 2 --n 3 --csv " +
                     sweep.string() + " --check-delta 0.6",
                 cap);
    expect(r.exit_code == 0, "sharpness exit code");
    const json doc = json::parse(slurp(summary));
    expect(validate_schema(doc, schemas / "sharpness.v1.schema.json", error),
           "sharpness schema: " + error);
    expect(doc["rel_err"].get<double>() < 0.02, "sharpness slope within 2%");
    expect(doc["iterated_check"]["verdict"] == "FALSIFIED", "delta above delta_star falsifies");
    expect(slurp(sweep).rfind("eps,rho_eps,inf_u,cap_term\n", 0) == 0, "sweep csv header");
  }

  // sharpness: p >= n rejected
  {
    auto r = run(bin + " sharpness --Q 2 --p 3 --n 2", cap);
    expect(r.exit_code == 2, "p >= n exits 2");
  }

  // io failure path
  {
    auto r = run(bin + " --output /nonexistent-dir/out.json exponents --Q 2 --p 2", cap);
    expect(r.exit_code == 4, "unwritable output exits 4");
  }

  // parse errors exit 2
  {
    auto r = run(bin + " exponents --Q nonsense --p 2", cap);
    expect(r.exit_code == 2, "bad number exits 2");
  }
  {
    auto r = run(bin + " no-such-command", cap);
    expect(r.exit_code == 2, "unknown subcommand exits 2");
  }

  // selftest: a quick criterion runs green and honors --kernel
  {
    auto r = run(bin + " --kernel scalar selftest --criterion 9", cap);
    expect(r.exit_code == 0, "criterion 9 passes under the scalar kernel");
    expect(r.output.find("PASS") != std::string::npos, "selftest prints PASS");
  }

  std::cout << (g_failures == 0 ? "cli smoke: all checks passed\n"
                                : "cli smoke: FAILURES\n");
  return g_failures == 0 ? 0 : 1;
}
