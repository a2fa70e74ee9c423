#include "irredcov/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "irredcov/estimator.hpp"
#include "irredcov/generate.hpp"

namespace irredcov {

void RunReport::finalize() {
  T = per_worker_time.empty() ? 0.0 : *std::max_element(per_worker_time.begin(), per_worker_time.end());
  T_sigma = std::accumulate(per_worker_time.begin(), per_worker_time.end(), 0.0);
  total_coverings = std::accumulate(per_worker_count.begin(), per_worker_count.end(), std::size_t{0});
}

namespace {

std::size_t available_cores() {
  return std::max(1u, std::thread::hardware_concurrency());
}

struct WorkerOutput {
  std::vector<Covering> coverings;
  std::size_t count = 0;
  double seconds = 0.0;
  std::exception_ptr error;
};

}  // namespace

RunResult run_parallel(const BoolMatrix& L, const Schedule& schedule, const EnumConfig& cfg,
                       const RunOptions& options) {
  if (schedule.subtasks() != L.cols()) throw std::invalid_argument("schedule does not cover 1..n");
  if (schedule.p < 1) throw std::invalid_argument("schedule has no workers");
  for (auto k : schedule.assignment)
    if (k < 1 || k > schedule.p) throw std::invalid_argument("schedule names a worker outside 1..p");
  if (schedule.p > available_cores() && !options.allow_oversubscription)
    throw std::invalid_argument("p = " + std::to_string(schedule.p) + " exceeds the " +
                                std::to_string(available_cores()) +
                                " available cores; allow oversubscription explicitly");

  std::vector<WorkerOutput> outputs(schedule.p);
  {
    std::vector<std::jthread> workers;
    workers.reserve(schedule.p);
    for (std::size_t k = 1; k <= schedule.p; ++k) {
      workers.emplace_back([&, k] {
        WorkerOutput& out = outputs[k - 1];
        try {
          const auto tasks = schedule.tasks_of(k);
          const auto start = std::chrono::steady_clock::now();
          for (auto j : tasks) {
            enumerate_subtask(
                L, j,
                [&](const Covering& h) {
                  ++out.count;
                  if (options.collect) out.coverings.push_back(h);
                  return true;
                },
                cfg);
          }
          out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        } catch (...) {
          out.error = std::current_exception();
        }
      });
    }
  }

  RunResult result;
  result.report.p = schedule.p;
  for (std::size_t k = 0; k < schedule.p; ++k) {
    auto& out = outputs[k];
    if (out.error) {
      try {
        std::rethrow_exception(out.error);
      } catch (const std::exception& e) {
        throw std::runtime_error("worker " + std::to_string(k + 1) + " failed: " + e.what());
      }
    }
    result.report.per_worker_time.push_back(out.seconds);
    result.report.per_worker_count.push_back(out.count);
    result.coverings.insert(result.coverings.end(), std::make_move_iterator(out.coverings.begin()),
                            std::make_move_iterator(out.coverings.end()));
  }
  result.report.finalize();
  std::sort(result.coverings.begin(), result.coverings.end());
  return result;
}

ScalingMetrics compute_metrics(const RunReport& baseline, const RunReport& run) {
  if (baseline.p != 1) throw std::invalid_argument("baseline must be a single-worker run");
  if (run.p < 1) throw std::invalid_argument("run has no workers");
  if (!(run.T > 0.0) || !(run.T_sigma > 0.0))
    throw std::invalid_argument("run time is zero; timer too coarse, repeat the run");
  ScalingMetrics m;
  m.S = baseline.T / run.T;
  m.E = m.S / static_cast<double>(run.p);
  m.s.reserve(run.p);
  for (double t : run.per_worker_time) m.s.push_back(t / run.T_sigma);
  return m;
}

std::optional<std::size_t> plateau_threshold(const std::vector<std::pair<std::size_t, double>>& p_T,
                                             double ratio) {
  for (const auto& [p, t] : p_T) {
    auto it = std::find_if(p_T.begin(), p_T.end(), [p = p](const auto& e) { return e.first == 2 * p; });
    if (it != p_T.end() && it->second >= ratio * t) return p;
  }
  return std::nullopt;
}

BenchResult benchmark(const BenchConfig& cfg) {
  if (cfg.repetitions < 1) throw std::invalid_argument("need at least one repetition");
  BenchResult result;
  for (std::size_t shape_index = 0; shape_index < cfg.shapes.size(); ++shape_index) {
    const auto [m, n] = cfg.shapes[shape_index];
    GenSpec spec{m, n, cfg.density, true, 0};
    Rng rng = Rng::substream(cfg.seed, shape_index);
    const BoolMatrix L = random_matrix(spec, rng);

    SampleConfig sc{cfg.r ? cfg.r : default_rows(m), cfg.t, cfg.u, rng(), cfg.estimation_threads};
    const auto est_start = std::chrono::steady_clock::now();
    const auto estimate = sample_eta(L, sc);
    const double estimation_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - est_start).count();

    // Median-of-repetitions report for one worker count.
    auto measure = [&](std::size_t p) {
      const Schedule schedule = distribute_tasks(p, estimate.f_star);
      std::vector<RunReport> reports;
      for (std::size_t rep = 0; rep < cfg.repetitions; ++rep)
        reports.push_back(run_parallel(L, schedule, {}, {false, cfg.allow_oversubscription}).report);
      std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.T < b.T; });
      return reports[reports.size() / 2];
    };

    const RunReport baseline = measure(1);
    for (auto p : cfg.p_values) {
      const RunReport report = p == 1 ? baseline : measure(p);
      const ScalingMetrics metrics = compute_metrics(baseline, report);
      result.rows.push_back(
          {spec.shape(), n, p, report.T, metrics.S, metrics.E, estimation_seconds, cfg.repetitions});
      for (std::size_t k = 0; k < p; ++k)
        result.workers.push_back({spec.shape(), p, k + 1, report.per_worker_time[k], metrics.s[k],
                                  report.per_worker_count[k]});
    }
  }
  return result;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "shape,n_cols,p,T_seconds,S,E,estimation_seconds,repetitions\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.6f,%.4f,%.4f,%.6f,%zu\n", r.shape.c_str(), r.n_cols,
                  r.p, r.T, r.S, r.E, r.estimation_seconds, r.repetitions);
    out << buf;
  }
}

void write_worker_csv(std::ostream& out, const std::vector<WorkerRow>& rows) {
  out << "shape,p,k,T_k,s_k,count_k\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.6f,%.6f,%zu\n", r.shape.c_str(), r.p, r.k, r.T_k,
                  r.s_k, r.count_k);
    out << buf;
  }
}

}  // namespace irredcov
