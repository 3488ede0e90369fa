#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctxdim/report.hpp"

namespace ctxdim {

/// One pass/fail line of the reproduction suite.
struct CheckResult {
  std::string id;  // criterion number plus a letter for sub-checks, e.g. "7c"
  int criterion = 0;
  std::string description;
  bool pass = false;
  /// Numeric checks: measured value, target and the comparison used
  /// ("abs" for |measured - expected| <= tolerance, ">=" and "<=" for
  /// one-sided checks against expected -/+ tolerance). Status checks leave
  /// the numbers empty and fill `detail`.
  std::optional<double> measured;
  std::optional<double> expected;
  double tolerance = 0.0;
  std::string comparison;
  std::string detail;
};

struct ReproduceConfig {
  std::uint64_t seed = 1;
  /// Criteria to run (1..10); empty runs all.
  std::vector<int> only;
  /// Negative control: criteria whose expected values are deliberately
  /// corrupted so that their rows must fail.
  std::vector<int> perturb;
  /// Instances in the random property suite (criterion 9).
  int property_instances = 100;
};

inline constexpr int kCriterionCount = 10;

std::vector<CheckResult> reproduce(const ReproduceConfig& cfg);

report::json to_json(const std::vector<CheckResult>& rows, const ReproduceConfig& cfg);
/// One line per check: PASS/FAIL, id, description, measured vs expected.
std::string summary_table(const std::vector<CheckResult>& rows);
bool all_pass(const std::vector<CheckResult>& rows);

}  // namespace ctxdim
