#include <cstdio>

#include "teichforge/suites.hpp"

// One line per acceptance criterion, in order; exit status is the number of failures.
int main() {
  tf::SuiteOptions opt;
  int failed = 0;
  int n = 0;
  for (const auto& name : tf::suite_names()) {
    tf::SuiteResult r = tf::run_suite(name, opt);
    failed += !r.pass;
    std::printf("%s %d %s (%.2fs): %s\n", r.pass ? "PASS" : "FAIL", ++n, r.title.c_str(), r.seconds, r.detail.c_str());
    for (const auto& w : r.warnings) std::printf("  warning: %s\n", w.c_str());
    std::fflush(stdout);
  }
  return failed;
}
