#pragma once

#include <string>
#include <vector>

namespace srp::cli {

enum class CheckLevel { fast, full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the numerical self-checks; `full` adds the slower Monte Carlo and
/// accuracy studies.
std::vector<CheckResult> run_checks(CheckLevel level);

}  // namespace srp::cli
