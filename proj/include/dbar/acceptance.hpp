#pragma once

#include <span>
#include <string>
#include <vector>

namespace dbar {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;              // one line: the decisive numbers
  std::vector<std::string> table;  // optional extra lines (trend tables)
};

inline constexpr int kCriterionCount = 12;

/// Runs acceptance criterion `id` (1..12) with the corpus files in data_dir.
/// Exceptions thrown by the library are caught and reported as failures.
CriterionResult run_criterion(int id, const std::string& data_dir);

/// All criteria in `ids` (every criterion when empty), in order.
std::vector<CriterionResult> run_acceptance(const std::string& data_dir, std::span<const int> ids = {});

}  // namespace dbar
