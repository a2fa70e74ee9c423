#include "irredcov/oracle.hpp"

#include <cstdint>

#include "irredcov/runcm.hpp"

namespace irredcov {

namespace {

bool covers_all(const std::vector<std::uint32_t>& row_masks, std::uint32_t subset) {
  for (auto r : row_masks)
    if ((r & subset) == 0) return false;
  return true;
}

}  // namespace

std::set<Covering> brute_force_dualize(const BoolMatrix& L, std::size_t column_cap) {
  const std::size_t n = L.cols();
  if (n > column_cap || n > 31)
    throw ResourceCapExceeded("brute-force oracle refuses n = " + std::to_string(n) +
                              " (cap " + std::to_string(column_cap) + ")");

  std::vector<std::uint32_t> row_masks(L.rows(), 0);
  for (std::size_t i = 1; i <= L.rows(); ++i)
    L.row(i).for_each_set([&](std::size_t j) { row_masks[i - 1] |= std::uint32_t{1} << j; });

  std::set<Covering> out;
  const std::uint32_t limit = std::uint32_t{1} << n;
  for (std::uint32_t subset = 1; subset < limit; ++subset) {
    if (!covers_all(row_masks, subset)) continue;
    bool minimal = true;
    for (std::uint32_t rest = subset; rest && minimal; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      if (covers_all(row_masks, subset & ~bit)) minimal = false;
    }
    if (!minimal) continue;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (subset >> j & 1u) cols.push_back(j + 1);
    out.insert(Covering(std::move(cols)));
  }
  return out;
}

ExactSizes exact_subtask_sizes(const BoolMatrix& L, ExactMethod method) {
  ExactSizes sizes;
  sizes.counts.assign(L.cols(), 0);
  if (method == ExactMethod::BruteForce) {
    for (const auto& h : brute_force_dualize(L)) ++sizes.counts[h.least() - 1];
  } else {
    sizes.counts = subtask_counts(L);
  }
  for (auto c : sizes.counts) sizes.total += c;
  sizes.nu.assign(L.cols(), 0.0);
  if (sizes.total > 0)
    for (std::size_t j = 0; j < L.cols(); ++j)
      sizes.nu[j] = static_cast<double>(sizes.counts[j]) / static_cast<double>(sizes.total);
  return sizes;
}

}  // namespace irredcov
