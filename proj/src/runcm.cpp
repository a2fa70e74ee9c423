#include "irredcov/runcm.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace irredcov {

namespace {

void check_columns(const BoolMatrix& L, const Covering& H) {
  if (!H.empty() && H.columns().back() > L.cols())
    throw std::out_of_range("covering column exceeds n");
}

// Recomputes S(H, j) for every j in H by a direct row scan.
std::vector<Bitset> supports_from_scratch(const BoolMatrix& L, std::span<const std::size_t> H) {
  std::vector<Bitset> supports;
  supports.reserve(H.size());
  for (auto j : H) {
    Bitset s = L.column(j);
    for (auto l : H)
      if (l != j) s.subtract(L.column(l));
    supports.push_back(std::move(s));
  }
  return supports;
}

}  // namespace

bool is_consistent(const BoolMatrix& L, const Covering& H) {
  if (H.empty()) throw std::invalid_argument("consistency is defined for nonempty column sets");
  check_columns(L, H);
  for (const auto& s : supports_from_scratch(L, H.columns()))
    if (s.none()) return false;
  return true;
}

bool is_irreducible_covering(const BoolMatrix& L, const Covering& H) {
  if (H.empty()) return false;
  return uncovered_rows(L, H).empty() && is_consistent(L, H);
}

RowSet supporting_rows(const BoolMatrix& L, const Covering& H, std::size_t j) {
  check_columns(L, H);
  if (!H.contains(j)) throw std::invalid_argument("column " + std::to_string(j) + " is not in H");
  Bitset s = L.column(j);
  for (auto l : H.columns())
    if (l != j) s.subtract(L.column(l));
  return RowSet::from_bits(std::move(s));
}

void extend_supports(std::span<const Bitset> parent, const Bitset& column_u, const Bitset& uncovered,
                     std::span<Bitset> child) {
  for (std::size_t k = 0; k < parent.size(); ++k) child[k].assign_difference(parent[k], column_u);
  // Rows covered by u and by nothing in H are exactly u's rows among the uncovered ones.
  child[parent.size()].assign_intersection(column_u, uncovered);
}

bool compatible_with_supports(std::span<const Bitset> supports, const Bitset& column_u,
                              const Bitset& uncovered) {
  // u needs a supporting row of its own: one that H leaves uncovered.
  if (!column_u.intersects(uncovered)) return false;
  for (const auto& s : supports)
    if (s.is_subset_of(column_u)) return false;
  return true;
}

SearchNode SearchNode::root(const BoolMatrix& L) {
  SearchNode node;
  node.uncovered_ = Bitset(L.rows(), true);
  node.candidates_ = Bitset(L.cols(), true);
  return node;
}

SearchNode SearchNode::from_columns(const BoolMatrix& L, const Covering& H) {
  check_columns(L, H);
  SearchNode node = root(L);
  node.chosen_ = H.columns();
  for (auto j : H.columns()) {
    node.uncovered_.subtract(L.column(j));
    node.candidates_.reset(j - 1);
  }
  node.supports_ = supports_from_scratch(L, node.chosen_);
  return node;
}

SearchNode SearchNode::with_column(const BoolMatrix& L, std::size_t u) const {
  if (u < 1 || u > L.cols() || !candidates_.test(u - 1))
    throw std::invalid_argument("column " + std::to_string(u) + " is not a candidate");
  SearchNode child;
  child.chosen_ = chosen_;
  child.chosen_.push_back(u);
  child.supports_.assign(chosen_.size() + 1, Bitset(L.rows()));
  extend_supports(supports_, L.column(u), uncovered_, child.supports_);
  child.uncovered_ = uncovered_;
  child.uncovered_.subtract(L.column(u));
  child.candidates_ = candidates_;
  child.candidates_.reset(u - 1);
  return child;
}

Covering SearchNode::columns() const {
  auto sorted = chosen_;
  std::sort(sorted.begin(), sorted.end());
  return Covering(std::move(sorted));
}

RowSet SearchNode::support(std::size_t j) const {
  auto it = std::find(chosen_.begin(), chosen_.end(), j);
  if (it == chosen_.end()) throw std::invalid_argument("column " + std::to_string(j) + " is not in H");
  return RowSet::from_bits(supports_[static_cast<std::size_t>(it - chosen_.begin())]);
}

bool is_compatible(const BoolMatrix& L, const SearchNode& node, std::size_t u) {
  if (!node.candidates().contains(u))
    throw std::invalid_argument("column " + std::to_string(u) + " is not a candidate");
  return compatible_with_supports(node.support_bits(), L.column(u), node.uncovered().bits());
}

namespace {

// Depth-indexed scratch for the recursion. Level d holds the tuple passed
// to the call at depth d, where |H| = d: R (uncovered rows), C (candidate
// columns, shrinking as siblings are tried) and S(H, h_k) for k < d.
class Enumerator {
 public:
  Enumerator(const BoolMatrix& L, const CoveringSink& sink, const EnumConfig& cfg)
      : L_(L), sink_(sink), cfg_(cfg) {
    const std::size_t depth = L.cols() + 1;
    levels_.resize(depth);
    for (auto& lv : levels_) {
      lv.uncovered = Bitset(L.rows());
      lv.candidates = Bitset(L.cols());
      lv.branch = Bitset(L.cols());
    }
    supports_.assign(depth * L.cols(), Bitset(L.rows()));
    chosen_.reserve(L.cols());
  }

  void run_root() {
    auto& lv = levels_[0];
    lv.uncovered = Bitset(L_.rows(), true);
    lv.candidates.clear();
    for (std::size_t j = 1; j <= L_.cols(); ++j)
      if (L_.column(j).any()) lv.candidates.set(j - 1);
    descend(0);
  }

  void run_subtask(std::size_t j) {
    const Bitset& col = L_.column(j);
    if (col.none()) return;
    chosen_.assign(1, j);
    auto& lv = levels_[1];
    lv.uncovered.assign_difference(Bitset(L_.rows(), true), col);
    support(1, 0) = col;
    if (lv.uncovered.none()) {
      emit();
      return;
    }
    lv.candidates.clear();
    for (std::size_t c = j + 1; c <= L_.cols(); ++c) {
      if (compatible_with_supports(supports_at(1), L_.column(c), lv.uncovered)) lv.candidates.set(c - 1);
    }
    descend(1);
  }

  EnumStats stats() const { return stats_; }

 private:
  struct Level {
    Bitset uncovered;
    Bitset candidates;
    Bitset branch;  // C_0^min
  };

  Bitset& support(std::size_t depth, std::size_t k) { return supports_[depth * L_.cols() + k]; }
  std::span<Bitset> supports_at(std::size_t depth) {
    return {supports_.data() + depth * L_.cols(), depth};
  }

  // Returns false once the sink asked to stop.
  bool descend(std::size_t depth) {
    ++stats_.nodes;
    auto& lv = levels_[depth];

    // Row of R with the fewest units among the candidate columns.
    std::size_t best_row = 0;
    std::size_t best_sum = std::numeric_limits<std::size_t>::max();
    const bool prefer_high = cfg_.min_row_tie_break == RowTieBreak::Highest;
    lv.uncovered.for_each_set([&](std::size_t i) {
      const std::size_t sum = L_.row(i + 1).count_and(lv.candidates);
      if (sum < best_sum || (prefer_high && sum == best_sum)) {
        best_sum = sum;
        best_row = i;
      }
    });
    if (best_sum == 0) return true;
    lv.branch.assign_intersection(L_.row(best_row + 1), lv.candidates);

    auto visit = [&](std::size_t bit) -> bool {
      const std::size_t j = bit + 1;
      const Bitset& col = L_.column(j);
      lv.candidates.reset(bit);

      auto& child = levels_[depth + 1];
      child.uncovered.assign_difference(lv.uncovered, col);
      chosen_.push_back(j);

      bool keep_going = true;
      if (child.uncovered.none()) {
        keep_going = emit();
      } else {
        auto child_supports = supports_at(depth + 1);
        extend_supports(supports_at(depth), col, lv.uncovered, child_supports);
        child.candidates.clear();
        lv.candidates.for_each_set([&](std::size_t c) {
          if (compatible_with_supports(child_supports, L_.column(c + 1), child.uncovered))
            child.candidates.set(c);
        });
        keep_going = descend(depth + 1);
      }
      chosen_.pop_back();
      return keep_going;
    };

    if (cfg_.column_order == ColumnOrder::Ascending) {
      for (std::size_t b = lv.branch.find_first(); b < lv.branch.size(); b = lv.branch.find_next(b + 1))
        if (!visit(b)) return false;
    } else {
      std::vector<std::size_t> order;
      lv.branch.for_each_set([&](std::size_t b) { order.push_back(b); });
      for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (!visit(*it)) return false;
    }
    return true;
  }

  bool emit() {
    auto cols = chosen_;
    std::sort(cols.begin(), cols.end());
    ++stats_.emitted;
    if (!sink_(Covering(std::move(cols)))) {
      stats_.completed = false;
      return false;
    }
    return true;
  }

  const BoolMatrix& L_;
  const CoveringSink& sink_;
  const EnumConfig& cfg_;
  std::vector<Level> levels_;
  std::vector<Bitset> supports_;
  std::vector<std::size_t> chosen_;
  EnumStats stats_;
};

}  // namespace

EnumStats enumerate(const BoolMatrix& L, const CoveringSink& sink, const EnumConfig& cfg) {
  Enumerator e(L, sink, cfg);
  e.run_root();
  return e.stats();
}

EnumStats enumerate_subtask(const BoolMatrix& L, std::size_t j, const CoveringSink& sink,
                            const EnumConfig& cfg) {
  if (j < 1 || j > L.cols()) throw std::out_of_range("subtask column out of range");
  Enumerator e(L, sink, cfg);
  e.run_subtask(j);
  return e.stats();
}

std::vector<Covering> dualize(const BoolMatrix& L, const EnumConfig& cfg) {
  std::vector<Covering> out;
  enumerate(L, [&](const Covering& h) { out.push_back(h); return true; }, cfg);
  return out;
}

std::vector<Covering> dualize_subtask(const BoolMatrix& L, std::size_t j, const EnumConfig& cfg) {
  std::vector<Covering> out;
  enumerate_subtask(L, j, [&](const Covering& h) { out.push_back(h); return true; }, cfg);
  return out;
}

std::vector<std::size_t> subtask_counts(const BoolMatrix& L, const EnumConfig& cfg) {
  std::vector<std::size_t> counts(L.cols(), 0);
  enumerate(L, [&](const Covering& h) { ++counts[h.least() - 1]; return true; }, cfg);
  return counts;
}

}  // namespace irredcov
