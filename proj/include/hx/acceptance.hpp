#pragma once

#include <string>
#include <vector>

namespace hx::acceptance {

// One row per acceptance criterion. `record` is the canonical per-instance
// result log: deterministic for fixed seeds and byte-identical across
// thread counts (the determinism criterion re-runs and compares them).
struct CriterionResult {
  int number = 0;
  std::string slug;
  bool pass = false;
  std::string record;
  std::string detail;
  double elapsed_s = 0;
};

struct Options {
  int threads = 1;
  std::string only;  // substring filter on the slug; empty = all
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int number, int threads);
std::vector<CriterionResult> run(const Options& options);

}  // namespace hx::acceptance
