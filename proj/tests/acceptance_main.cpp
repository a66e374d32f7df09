// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failing criterion.
#include <cstring>

#include "sphereform/acceptance.hpp"

int main(int argc, char** argv) {
  sphereform::SuiteOptions opts;
  opts.seed = 1;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) opts.quick = true;
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
      opts.seed = std::strtoull(argv[i + 1], nullptr, 10);
    if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) opts.out_dir = argv[i + 1];
  }
  sphereform::SuiteResult res = sphereform::run_suite(opts);
  sphereform::print_suite(res);
  return res.all_pass ? 0 : 1;
}
