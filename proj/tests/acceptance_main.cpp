// Acceptance battery entry point: prints one PASS/FAIL line per criterion and
// exits nonzero when any fails. `--quick` trims the random suite; `--jobs N`
// runs grid cells in parallel.

#include <cstring>
#include <iostream>

#include "qubolin/acceptance.hpp"

int main(int argc, char** argv) {
  qubolin::acceptance::SuiteOptions opts;
  opts.jobs = qubolin::default_jobs();
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--quick") == 0) opts.quick = true;
    if (std::strcmp(argv[k], "--jobs") == 0 && k + 1 < argc) opts.jobs = std::atoi(argv[++k]);
  }
  const int failures = qubolin::acceptance::run_and_print(std::cout, opts);
  if (failures > 0) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
