#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "irredcov/bitset.hpp"

namespace irredcov {

// All public indices (rows, columns) are 1-based. Internally bit k of a
// Bitset stands for index k + 1.

/// Subset of {1..universe} with ascending iteration.
template <typename Tag>
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : bits_(universe) {}
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> elements) : bits_(universe) {
    for (auto e : elements) insert(e);
  }
  static IndexSet full(std::size_t universe) {
    IndexSet s;
    s.bits_ = Bitset(universe, true);
    return s;
  }
  static IndexSet from_bits(Bitset bits) {
    IndexSet s;
    s.bits_ = std::move(bits);
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool contains(std::size_t index) const {
    return index >= 1 && index <= bits_.size() && bits_.test(index - 1);
  }
  void insert(std::size_t index) {
    check(index);
    bits_.set(index - 1);
  }
  void erase(std::size_t index) {
    check(index);
    bits_.reset(index - 1);
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    bits_.for_each_set([&](std::size_t k) { out.push_back(k + 1); });
    return out;
  }

  const Bitset& bits() const { return bits_; }
  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  void check(std::size_t index) const {
    if (index < 1 || index > bits_.size())
      throw std::out_of_range("index " + std::to_string(index) + " outside 1.." +
                              std::to_string(bits_.size()));
  }

  Bitset bits_;
};

struct RowTag {};
struct ColTag {};
using RowSet = IndexSet<RowTag>;
using ColSet = IndexSet<ColTag>;

/// Strictly increasing list of 1-based column indices.
class Covering {
 public:
  Covering() = default;
  Covering(std::initializer_list<std::size_t> columns) : Covering(std::vector<std::size_t>(columns)) {}
  explicit Covering(std::vector<std::size_t> columns);

  const std::vector<std::size_t>& columns() const { return columns_; }
  std::size_t size() const { return columns_.size(); }
  bool empty() const { return columns_.empty(); }
  /// Least column index; the subtask this covering belongs to.
  std::size_t least() const;
  bool contains(std::size_t column) const;

  /// Space-separated indices, e.g. "2 4".
  std::string to_string() const;

  friend auto operator<=>(const Covering&, const Covering&) = default;
  friend bool operator==(const Covering&, const Covering&) = default;

 private:
  std::vector<std::size_t> columns_;
};

/// Immutable m-by-n Boolean matrix stored both row-major and column-major.
class BoolMatrix {
 public:
  /// rows[i] must have exactly n bits.
  BoolMatrix(std::size_t m, std::size_t n, std::vector<Bitset> rows);

  /// Each string is one row of '0'/'1' characters.
  static BoolMatrix from_strings(const std::vector<std::string>& rows);
  static BoolMatrix identity(std::size_t n);
  static BoolMatrix ones(std::size_t m, std::size_t n);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  bool at(std::size_t i, std::size_t j) const;
  /// Row i (1-based) over n column bits.
  const Bitset& row(std::size_t i) const { return rows_[i - 1]; }
  /// Column j (1-based) over m row bits.
  const Bitset& column(std::size_t j) const { return cols_[j - 1]; }

  std::string row_string(std::size_t i) const;

  friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Bitset> rows_;
  std::vector<Bitset> cols_;
};

/// The |w|-by-n matrix of L's rows listed in w, in ascending order.
BoolMatrix submatrix_rows(const BoolMatrix& L, const RowSet& w);

bool covers_row(const BoolMatrix& L, const Covering& H, std::size_t i);

/// Rows with no unit entry in any column of H.
RowSet uncovered_rows(const BoolMatrix& L, const Covering& H);

/// Column set of H as bits over n.
Bitset column_bits(const BoolMatrix& L, const Covering& H);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the text format: "m n" header, then m lines of exactly n '0'/'1'.
BoolMatrix read_matrix(std::istream& in);
BoolMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const BoolMatrix& L);

/// One covering per line, indices space-separated.
void write_coverings(std::ostream& out, const std::vector<Covering>& coverings);

}  // namespace irredcov
