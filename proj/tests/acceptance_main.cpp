// one line per acceptance criterion; exit 1 if any failed
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "lie/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance matrix"};
  lie::AcceptanceOptions o;
  o.threads = int(std::max(1u, std::thread::hardware_concurrency()));
  app.add_flag("--skip-data", o.skip_data);
  app.add_option("--threads", o.threads);
  CLI11_PARSE(app, argc, argv);

  auto res = lie::run_acceptance(o, &std::cout);
  int pass = 0, fail = 0, skip = 0;
  for (auto& r : res)
    (r.status == lie::CriterionResult::Pass ? pass : r.status == lie::CriterionResult::Fail ? fail : skip)++;
  std::cout << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
  return lie::acceptance_exit_code(res);
}
