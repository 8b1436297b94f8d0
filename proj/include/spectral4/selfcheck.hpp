#pragma once

#include <string>
#include <vector>

namespace spectral4 {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Acceptance criteria 1..9. Each runs its own computation and compares against
/// an independent oracle or a fixed tolerance.
CriterionResult run_criterion(int id);
std::vector<int> all_criteria();

/// The zero-coefficient subset used by `spectral4 selfcheck`.
std::vector<int> zero_coefficient_criteria();

/// "PASS [id] title: detail" or "FAIL [...]".
std::string format_result(const CriterionResult& r);

}  // namespace spectral4
