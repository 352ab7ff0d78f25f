#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fkglab/json_io.hpp"

namespace fkglab {

struct SuiteOptions {
  uint64_t seed = 20240917;
  int threads = 1;      // worker cap for sampling-heavy suites
  bool verbose = false; // per-instance lines in `lines`
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> lines;  // human-readable findings
  Json details;                    // machine-readable report payload
  double seconds = 0;
};

// Named verification suites. The first ten realize the acceptance criteria;
// "h1-converse-search" is an exploratory search that asserts nothing.
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace fkglab
