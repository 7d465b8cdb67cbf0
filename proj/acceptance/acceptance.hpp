#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zonoshape::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // runtime limit; exceeding it fails the criterion
};

inline constexpr int kCriteria = 12;

std::string criterion_name(int id);

/// Runs criterion `id` in 1..12. Library errors are caught and reported as failures.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);

/// "PASS  3 limit-shape closed forms ... (0.01 s / 10 s)"
std::string format(const CriterionResult& r);

}  // namespace zonoshape::acceptance
