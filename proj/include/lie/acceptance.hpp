#pragma once
#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace lie {

struct CriterionResult {
  enum Status { Pass, Fail, Skipped };
  int id = 0;
  std::string name;
  Status status = Fail;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  int threads = 1;
  bool skip_data = false;
  std::set<int> only;         // empty = all
  std::string rep_data;       // empty = shipped file
  bool tamper_jacobi = false;  // fault injection for the Chevalley criterion
  bool verbose = false;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o, std::ostream* progress = nullptr);
void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);
std::string acceptance_json(const std::vector<CriterionResult>& results);
// 0 if nothing failed
int acceptance_exit_code(const std::vector<CriterionResult>& results);

}  // namespace lie
