#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "irredcov/bitmatrix.hpp"
#include "irredcov/chi_squared.hpp"

namespace irredcov {

/// Sampling plan for the subtask-size estimate: t random r-row
/// submatrices, u coverings drawn from each, N = t * u observations.
struct SampleConfig {
  std::size_t r = 0;
  std::size_t t = 20;
  std::size_t u = 50;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::size_t max_consecutive_discards = 1000;
  bool keep_trace = false;  // record each (submatrix rows, covering) draw

  std::size_t sample_size() const { return t * u; }
};

/// ceil(m / 2), the default submatrix height.
constexpr std::size_t default_rows(std::size_t m) { return (m + 1) / 2; }

struct FrequencyEstimate {
  std::vector<double> f_star;        // f_star[j-1], sums to 1
  std::vector<std::size_t> sample;   // least column of each draw, submatrix-major
  SampleConfig config;
  std::size_t discarded = 0;         // submatrices redrawn because they had no covering

  struct Draw {
    RowSet rows;
    Covering covering;
  };
  std::vector<Draw> trace;           // filled only with keep_trace
};

/// Raised when a submatrix with at least one covering cannot be found.
class SamplingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Draws the least-column sample. Submatrix s uses RNG substream s, so the
/// result does not depend on cfg.threads.
FrequencyEstimate sample_eta(const BoolMatrix& L, const SampleConfig& cfg);

/// n lines "j f_star_j".
void write_estimate(std::ostream& out, std::span<const double> f_star);
/// Inverse of write_estimate; rows must be numbered 1..n in order.
std::vector<double> read_estimate(std::istream& in);

struct ValidationConfig {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;  // (m, n)
  std::vector<std::size_t> r_values;
  std::size_t matrices_per_shape = 20;
  std::size_t t = 20;
  std::size_t u = 50;
  std::uint64_t seed = 0;
  double density = 0.5;
  DofRule dof_rule = DofRule::SupportMinusOne;
  bool include_full_height = false;  // also run r == m
  std::size_t threads = 1;
};

struct ValidationRow {
  std::string shape;
  std::size_t r = 0;
  double median_Z = 0.0;
  double median_pvalue = 0.0;
};

/// For each shape: draw matrices, compute exact subtask sizes, sample for
/// every r below m, and report the medians of Z and the p-value.
std::vector<ValidationRow> validation_experiment(const ValidationConfig& cfg);

/// Columns shape,r,median_Z,median_pvalue.
void write_validation_csv(std::ostream& out, const std::vector<ValidationRow>& rows);

double median(std::vector<double> values);

}  // namespace irredcov
