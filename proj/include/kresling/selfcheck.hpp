#pragma once

#include <string>
#include <vector>

namespace kresling {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Internal invariant suite behind the `check` command. Every check compares
/// a library result against an independent route to the same quantity.
std::vector<CheckResult> run_selfcheck();

}  // namespace kresling
