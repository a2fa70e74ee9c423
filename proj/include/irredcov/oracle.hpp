#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

#include "irredcov/bitmatrix.hpp"

namespace irredcov {

/// Raised when a request would exceed a configured size cap.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kOracleColumnCap = 20;

/// Every column subset that covers L and stops covering when any single
/// column is removed. Tries all 2^n subsets.
std::set<Covering> brute_force_dualize(const BoolMatrix& L, std::size_t column_cap = kOracleColumnCap);

/// nu[j-1] = |P_j(L)| / |P(L)|.
struct ExactSizes {
  std::vector<double> nu;
  std::vector<std::size_t> counts;
  std::size_t total = 0;
  bool empty() const { return total == 0; }
};

enum class ExactMethod { BruteForce, Runcm };

ExactSizes exact_subtask_sizes(const BoolMatrix& L, ExactMethod method = ExactMethod::Runcm);

}  // namespace irredcov
