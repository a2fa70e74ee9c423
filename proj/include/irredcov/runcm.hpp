#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "irredcov/bitmatrix.hpp"

namespace irredcov {

/// Consistency (identity-submatrix condition): every j in H has a row
/// covered by j and by no other column of H. Throws on empty H.
bool is_consistent(const BoolMatrix& L, const Covering& H);

/// H covers every row and is consistent; equivalently H is a minimal
/// hitting set of the rows.
bool is_irreducible_covering(const BoolMatrix& L, const Covering& H);

/// S(H, j): rows covered by column j and by no other column of H.
RowSet supporting_rows(const BoolMatrix& L, const Covering& H, std::size_t j);

/// Support sets of the child node H + {u}, maintained from the parent's.
/// parent[k] is S(H, h_k); uncovered is the parent's uncovered rows. Writes
/// S(H+u, h_k) into child[k] and S(H+u, u) into child[parent.size()].
void extend_supports(std::span<const Bitset> parent, const Bitset& column_u,
                     const Bitset& uncovered, std::span<Bitset> child);

/// H + {u} stays consistent: u covers a row H leaves uncovered, and u does
/// not cover every supporting row of any column already in H.
bool compatible_with_supports(std::span<const Bitset> supports, const Bitset& column_u,
                              const Bitset& uncovered);

/// Search-tree vertex (H, R, C) together with the support sets of H.
class SearchNode {
 public:
  /// H empty, R all rows, C all columns.
  static SearchNode root(const BoolMatrix& L);
  /// Node for a given consistent-or-not H; supports recomputed from
  /// scratch, C = all columns outside H.
  static SearchNode from_columns(const BoolMatrix& L, const Covering& H);

  /// Child obtained by adding u (u must be in C), supports updated
  /// incrementally.
  SearchNode with_column(const BoolMatrix& L, std::size_t u) const;

  Covering columns() const;
  RowSet uncovered() const { return RowSet::from_bits(uncovered_); }
  ColSet candidates() const { return ColSet::from_bits(candidates_); }
  /// S(H, j) for j in H.
  RowSet support(std::size_t j) const;

  std::span<const Bitset> support_bits() const { return supports_; }

 private:
  SearchNode() = default;

  std::vector<std::size_t> chosen_;  // H in insertion order, 1-based
  Bitset uncovered_;
  Bitset candidates_;
  std::vector<Bitset> supports_;     // parallel to chosen_
};

/// u in node.C keeps H + {u} consistent.
bool is_compatible(const BoolMatrix& L, const SearchNode& node, std::size_t u);

enum class RowTieBreak { Lowest, Highest };
enum class ColumnOrder { Ascending, Descending };

/// Receives each irreducible covering; return false to stop the enumeration.
using CoveringSink = std::function<bool(const Covering&)>;

struct EnumConfig {
  RowTieBreak min_row_tie_break = RowTieBreak::Lowest;
  ColumnOrder column_order = ColumnOrder::Ascending;
};

struct EnumStats {
  std::size_t emitted = 0;
  std::size_t nodes = 0;
  bool completed = true;  // false when the sink stopped the run
};

/// Emits every irreducible covering of L exactly once.
EnumStats enumerate(const BoolMatrix& L, const CoveringSink& sink, const EnumConfig& cfg = {});

/// Emits the irreducible coverings whose least column is j.
EnumStats enumerate_subtask(const BoolMatrix& L, std::size_t j, const CoveringSink& sink,
                            const EnumConfig& cfg = {});

/// Collecting forms, in emission order.
std::vector<Covering> dualize(const BoolMatrix& L, const EnumConfig& cfg = {});
std::vector<Covering> dualize_subtask(const BoolMatrix& L, std::size_t j, const EnumConfig& cfg = {});

/// result[j-1] = number of irreducible coverings with least column j.
std::vector<std::size_t> subtask_counts(const BoolMatrix& L, const EnumConfig& cfg = {});

}  // namespace irredcov
