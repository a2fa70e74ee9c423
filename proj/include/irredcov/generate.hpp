#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "irredcov/bitmatrix.hpp"
#include "irredcov/rng.hpp"

namespace irredcov {

/// Random matrix family U(m, n): i.i.d. Bernoulli(density) entries.
struct GenSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  double density = 0.5;
  bool forbid_zero_rows = true;
  std::uint64_t seed = 0;

  /// "30x100"
  std::string shape() const { return std::to_string(m) + "x" + std::to_string(n); }
};

/// Throws std::invalid_argument unless m, n >= 1 and 0 < density < 1.
void validate(const GenSpec& spec);

/// Draws from rng; with forbid_zero_rows an all-zero row is redrawn.
BoolMatrix random_matrix(const GenSpec& spec, Rng& rng);

/// Seeds a fresh generator from spec.seed.
BoolMatrix random_matrix(const GenSpec& spec);

/// Uniform r-subset of {1..m} (Floyd's algorithm).
RowSet random_row_subset(std::size_t m, std::size_t r, Rng& rng);

}  // namespace irredcov
