#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace logcap {

struct SuiteResult {
  std::string name;
  long checks = 0;
  std::vector<std::string> failures;  // first few only
  bool passed() const { return failures.empty(); }
};

// product formula, functoriality, SNF and precision-stability suites; deterministic in (seed, prec)
std::vector<SuiteResult> run_selftest(std::uint64_t seed, int prec);

}  // namespace logcap
