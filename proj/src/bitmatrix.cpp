#include "irredcov/bitmatrix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace irredcov {

Covering::Covering(std::vector<std::size_t> columns) : columns_(std::move(columns)) {
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    if (columns_[k] == 0) throw std::invalid_argument("covering column indices are 1-based");
    if (k > 0 && columns_[k] <= columns_[k - 1])
      throw std::invalid_argument("covering columns must be strictly increasing");
  }
}

std::size_t Covering::least() const {
  if (columns_.empty()) throw std::logic_error("empty covering has no least column");
  return columns_.front();
}

bool Covering::contains(std::size_t column) const {
  return std::binary_search(columns_.begin(), columns_.end(), column);
}

std::string Covering::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(columns_[k]);
  }
  return out;
}

BoolMatrix::BoolMatrix(std::size_t m, std::size_t n, std::vector<Bitset> rows)
    : m_(m), n_(n), rows_(std::move(rows)) {
  if (m == 0 || n == 0) throw std::invalid_argument("matrix dimensions must be positive");
  if (rows_.size() != m) throw std::invalid_argument("row count does not match m");
  cols_.assign(n, Bitset(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (rows_[i].size() != n) throw std::invalid_argument("row width does not match n");
    rows_[i].for_each_set([&](std::size_t j) { cols_[j].set(i); });
  }
}

BoolMatrix BoolMatrix::from_strings(const std::vector<std::string>& rows) {
  if (rows.empty()) throw std::invalid_argument("matrix needs at least one row");
  const std::size_t n = rows.front().size();
  std::vector<Bitset> bits;
  bits.reserve(rows.size());
  for (const auto& s : rows) {
    if (s.size() != n) throw std::invalid_argument("ragged rows");
    Bitset b(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (s[j] == '1') {
        b.set(j);
      } else if (s[j] != '0') {
        throw std::invalid_argument("matrix entries must be '0' or '1'");
      }
    }
    bits.push_back(std::move(b));
  }
  return BoolMatrix(rows.size(), n, std::move(bits));
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  std::vector<Bitset> bits(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) bits[i].set(i);
  return BoolMatrix(n, n, std::move(bits));
}

BoolMatrix BoolMatrix::ones(std::size_t m, std::size_t n) {
  return BoolMatrix(m, n, std::vector<Bitset>(m, Bitset(n, true)));
}

bool BoolMatrix::at(std::size_t i, std::size_t j) const {
  if (i < 1 || i > m_ || j < 1 || j > n_) throw std::out_of_range("matrix index out of range");
  return rows_[i - 1].test(j - 1);
}

std::string BoolMatrix::row_string(std::size_t i) const {
  std::string s(n_, '0');
  rows_[i - 1].for_each_set([&](std::size_t j) { s[j] = '1'; });
  return s;
}

BoolMatrix submatrix_rows(const BoolMatrix& L, const RowSet& w) {
  if (w.universe() != L.rows()) throw std::invalid_argument("row set universe does not match m");
  if (w.empty()) throw std::invalid_argument("row selection is empty");
  std::vector<Bitset> rows;
  w.bits().for_each_set([&](std::size_t i) { rows.push_back(L.row(i + 1)); });
  const std::size_t count = rows.size();
  return BoolMatrix(count, L.cols(), std::move(rows));
}

Bitset column_bits(const BoolMatrix& L, const Covering& H) {
  Bitset b(L.cols());
  for (auto j : H.columns()) {
    if (j > L.cols()) throw std::out_of_range("covering column exceeds n");
    b.set(j - 1);
  }
  return b;
}

bool covers_row(const BoolMatrix& L, const Covering& H, std::size_t i) {
  if (i < 1 || i > L.rows()) throw std::out_of_range("row index out of range");
  return L.row(i).intersects(column_bits(L, H));
}

RowSet uncovered_rows(const BoolMatrix& L, const Covering& H) {
  Bitset uncovered(L.rows(), true);
  for (auto j : H.columns()) {
    if (j > L.cols()) throw std::out_of_range("covering column exceeds n");
    uncovered.subtract(L.column(j));
  }
  return RowSet::from_bits(std::move(uncovered));
}

namespace {

std::size_t parse_positive(std::string_view token, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0)
    throw ParseError(line, std::string("expected positive integer for ") + what);
  return value;
}

}  // namespace

BoolMatrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header \"m n\"");
  const auto space = line.find(' ');
  if (space == std::string::npos || line.find(' ', space + 1) != std::string::npos)
    throw ParseError(1, "header must be \"m n\"");
  const std::size_t m = parse_positive(std::string_view(line).substr(0, space), 1, "m");
  const std::size_t n = parse_positive(std::string_view(line).substr(space + 1), 1, "n");

  std::vector<Bitset> rows;
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lineno = i + 2;
    if (!std::getline(in, line)) throw ParseError(lineno, "expected " + std::to_string(m) + " rows");
    if (line.size() != n)
      throw ParseError(lineno, "row has " + std::to_string(line.size()) + " characters, expected " +
                                   std::to_string(n));
    Bitset b(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (line[j] == '1') {
        b.set(j);
      } else if (line[j] != '0') {
        throw ParseError(lineno, "invalid character at column " + std::to_string(j + 1));
      }
    }
    rows.push_back(std::move(b));
  }
  if (std::getline(in, line))
    throw ParseError(m + 2, "unexpected content after last row");
  return BoolMatrix(m, n, std::move(rows));
}

BoolMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const BoolMatrix& L) {
  out << L.rows() << ' ' << L.cols() << '\n';
  for (std::size_t i = 1; i <= L.rows(); ++i) out << L.row_string(i) << '\n';
}

void write_coverings(std::ostream& out, const std::vector<Covering>& coverings) {
  for (const auto& h : coverings) out << h.to_string() << '\n';
}

}  // namespace irredcov
