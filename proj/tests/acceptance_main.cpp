// Acceptance harness: runs every named verification suite and prints one
// PASS/FAIL line per criterion with its runtime budget.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "fkglab/suites.hpp"

namespace {

struct Criterion {
  const char* suite;
  const char* label;
  double budget_seconds;
};

// Budgets are hard limits checked here, not just documentation.
const std::vector<Criterion> kCriteria = {
    {"prop111", "random-walk characterization equivalence (500 laws)", 60},
    {"gamma-threshold", "lazy-walk crossings threshold at gamma = 1/3", 5},
    {"named-families", "laplace/power-law/srw crossing verdicts", 5},
    {"thm17-conditional", "conditioned chains: lattice condition + association", 120},
    {"counterexample", "explicit lattice-condition failure paths", 5},
    {"conditional-oracle", "conditioning equals enumerate-and-renormalize", 10},
    {"probe-brownian-bessel", "bridge/bessel statistical probes", 120},
    {"levy", "levy classifier and negative-covariance witness", 60},
    {"sampler-gof", "conditioned sampler goodness of fit", 30},
    {"assoc-not-lattice", "associated measure without the lattice condition", 5},
};

}  // namespace

int main(int argc, char** argv) {
  std::string only = argc > 1 ? argv[1] : "";
  fkglab::SuiteOptions options;
  options.threads = 4;

  int failures = 0;
  for (size_t i = 0; i < kCriteria.size(); ++i) {
    const Criterion& criterion = kCriteria[i];
    if (!only.empty() && only != criterion.suite) continue;
    fkglab::SuiteResult result;
    bool threw = false;
    std::string what;
    try {
      result = fkglab::run_suite(criterion.suite, options);
    } catch (const std::exception& e) {
      threw = true;
      what = e.what();
    }
    bool in_budget = !threw && result.seconds <= criterion.budget_seconds;
    bool pass = !threw && result.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %zu: %s (%s) — %.2fs / budget %.0fs\n",
                pass ? "PASS" : "FAIL", i + 1, criterion.label, criterion.suite,
                threw ? 0.0 : result.seconds, criterion.budget_seconds);
    if (threw) {
      std::printf("        error: %s\n", what.c_str());
    } else {
      for (const auto& line : result.lines) std::printf("        %s\n", line.c_str());
      if (!in_budget) std::printf("        over the runtime budget\n");
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
