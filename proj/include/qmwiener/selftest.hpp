#pragma once

#include <string>
#include <vector>

namespace qmw::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

int criterion_count();
CriterionResult run_criterion(int id);  // id in [1, criterion_count()]
std::vector<CriterionResult> run_all();

}  // namespace qmw::selftest
