#pragma once
// The verification battery behind the `suite` command and the acceptance test
// binary: one named check per claim, each reporting pass/fail plus metrics.

#include <cstdint>
#include <string>
#include <vector>

#include "sphereform/report.hpp"

namespace sphereform {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::string out_dir;      // empty = no files
  bool include_timing = false;
  bool quick = false;       // reduced sample counts for smoke testing
};

struct SuiteResult {
  std::vector<CheckResult> checks;
  bool all_pass = true;
  std::string csv;
};

SuiteResult run_suite(const SuiteOptions& opts);

// prints "[PASS]/[FAIL] <id>: <name>" lines plus details
void print_suite(const SuiteResult& r);

}  // namespace sphereform
