#pragma once

#include <string>
#include <vector>

namespace lacfit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string details;
};

/// Run the full acceptance suite. Every input is pinned (fixed seeds), so
/// repeated runs produce identical results.
std::vector<CriterionResult> run_acceptance();

/// One `[PASS]`/`[FAIL]` line per criterion.
std::string format_acceptance(const std::vector<CriterionResult>& results);

}  // namespace lacfit
