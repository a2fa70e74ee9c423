#include "irredcov/generate.hpp"

#include <stdexcept>

namespace irredcov {

void validate(const GenSpec& spec) {
  if (spec.m == 0 || spec.n == 0) throw std::invalid_argument("matrix dimensions must be positive");
  if (!(spec.density > 0.0 && spec.density < 1.0))
    throw std::invalid_argument("density must lie strictly between 0 and 1");
}

BoolMatrix random_matrix(const GenSpec& spec, Rng& rng) {
  validate(spec);
  std::vector<Bitset> rows;
  rows.reserve(spec.m);
  for (std::size_t i = 0; i < spec.m; ++i) {
    Bitset row(spec.n);
    do {
      for (std::size_t j = 0; j < spec.n; ++j) row.set(j, rng.uniform() < spec.density);
    } while (spec.forbid_zero_rows && row.none());
    rows.push_back(std::move(row));
  }
  return BoolMatrix(spec.m, spec.n, std::move(rows));
}

BoolMatrix random_matrix(const GenSpec& spec) {
  Rng rng(spec.seed);
  return random_matrix(spec, rng);
}

RowSet random_row_subset(std::size_t m, std::size_t r, Rng& rng) {
  if (r < 1 || r > m) throw std::invalid_argument("subset size must lie in 1..m");
  RowSet w(m);
  // Floyd: for k = m-r+1..m pick t in [1, k]; take t unless already taken, else k.
  for (std::size_t k = m - r + 1; k <= m; ++k) {
    const std::size_t t = 1 + static_cast<std::size_t>(rng.below(k));
    w.insert(w.contains(t) ? k : t);
  }
  return w;
}

}  // namespace irredcov
