#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "teichforge/pipeline.hpp"

namespace tf {

struct SuiteOptions {
  uint32_t samples = 12;  // subgroups Delta for the per-Delta suites
  uint32_t words = 25;    // random Gamma(2) words for the diagram check
  uint64_t seed = 1;
  uint64_t budget = 10000;
};

struct SuiteResult {
  std::string name;
  std::string title;
  bool pass = false;
  std::string detail;
  std::vector<std::string> warnings;
  double seconds = 0;
};

// Reproduction suites, in acceptance order.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

// Deterministic sample of subgroup classes of Gamma(2), round robin over
// index 1..max_index so that small counts still cover every index.
std::vector<CosetAction> delta_sample(uint32_t count, uint32_t max_index = 6);

// The index-2 subgroup used for the end-to-end run: G1 swaps the cosets.
CosetAction index2_delta();

}  // namespace tf
