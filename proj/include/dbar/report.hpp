#pragma once

#include <map>
#include <string>
#include <vector>

namespace dbar {

/// Relative slack in every recorded inequality verdict.
inline constexpr double kVerdictSlack = 1e-9;

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

inline bool verdict(double lhs, double rhs) { return lhs <= rhs + kVerdictSlack * (rhs < 0 ? -rhs : rhs); }

struct SolveReport {
  double residual_sup = 0.0;
  std::vector<BoundCheck> bound_checks;
  std::map<std::string, double> constants_measured;
  int samples = 0;

  const BoundCheck& add_check(std::string name, double lhs, double rhs) {
    bound_checks.push_back({std::move(name), lhs, rhs, verdict(lhs, rhs)});
    return bound_checks.back();
  }
  /// Records a boolean outcome as 0 ≤ 0 (pass) or 1 ≤ 0 (fail).
  const BoundCheck& add_flag(std::string name, bool ok) { return add_check(std::move(name), ok ? 0.0 : 1.0, 0.0); }

  bool all_pass() const {
    for (const auto& c : bound_checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

}  // namespace dbar
