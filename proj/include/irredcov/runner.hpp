#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irredcov/bitmatrix.hpp"
#include "irredcov/runcm.hpp"
#include "irredcov/scheduler.hpp"

namespace irredcov {

/// Timings of one parallel run; index k-1 refers to worker k.
struct RunReport {
  std::size_t p = 0;
  std::vector<double> per_worker_time;  // seconds
  std::vector<std::size_t> per_worker_count;
  double T = 0.0;        // max_k T_k
  double T_sigma = 0.0;  // sum_k T_k
  std::size_t total_coverings = 0;

  /// Fills T, T_sigma and total_coverings from the per-worker vectors.
  void finalize();
};

struct RunResult {
  std::vector<Covering> coverings;  // lexicographically sorted; empty if not collected
  RunReport report;
};

struct RunOptions {
  bool collect = true;
  bool allow_oversubscription = false;
};

/// Worker k enumerates its subtasks in ascending order on its own thread.
/// Any worker failure fails the whole run.
RunResult run_parallel(const BoolMatrix& L, const Schedule& schedule, const EnumConfig& cfg = {},
                       const RunOptions& options = {});

struct ScalingMetrics {
  double S = 0.0;              // T(1) / T(p)
  double E = 0.0;              // S / p
  std::vector<double> s;       // T_k / T_sigma
};

ScalingMetrics compute_metrics(const RunReport& baseline, const RunReport& run);

/// Smallest p in the sorted timing series whose doubling no longer helps:
/// T(2p) >= ratio * T(p).
std::optional<std::size_t> plateau_threshold(const std::vector<std::pair<std::size_t, double>>& p_T,
                                             double ratio = 0.9);

struct BenchConfig {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;  // (m, n)
  std::vector<std::size_t> p_values{1, 2, 4, 8};
  double density = 0.5;
  std::uint64_t seed = 0;
  std::size_t repetitions = 3;
  std::size_t r = 0;  // 0 selects ceil(m/2)
  std::size_t t = 20;
  std::size_t u = 50;
  std::size_t estimation_threads = 1;
  bool allow_oversubscription = false;
};

struct BenchRow {
  std::string shape;
  std::size_t n_cols = 0;
  std::size_t p = 0;
  double T = 0.0;
  double S = 0.0;
  double E = 0.0;
  double estimation_seconds = 0.0;
  std::size_t repetitions = 0;
};

struct WorkerRow {
  std::string shape;
  std::size_t p = 0;
  std::size_t k = 0;
  double T_k = 0.0;
  double s_k = 0.0;
  std::size_t count_k = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<WorkerRow> workers;
};

/// Per shape: draw a matrix, estimate subtask sizes, schedule and run for
/// every p; each cell is the median of the repetitions.
BenchResult benchmark(const BenchConfig& cfg);

/// shape,n_cols,p,T_seconds,S,E,estimation_seconds,repetitions
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
/// shape,p,k,T_k,s_k,count_k
void write_worker_csv(std::ostream& out, const std::vector<WorkerRow>& rows);

}  // namespace irredcov
