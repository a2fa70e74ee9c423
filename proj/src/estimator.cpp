#include "irredcov/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "irredcov/generate.hpp"
#include "irredcov/oracle.hpp"
#include "irredcov/rng.hpp"
#include "irredcov/runcm.hpp"

namespace irredcov {

namespace {

struct SubmatrixDraw {
  std::vector<std::size_t> values;
  std::vector<FrequencyEstimate::Draw> trace;
  std::size_t discarded = 0;
};

SubmatrixDraw draw_submatrix(const BoolMatrix& L, const SampleConfig& cfg, std::size_t s) {
  Rng rng = Rng::substream(cfg.seed, s);
  SubmatrixDraw draw;
  RowSet rows;
  std::vector<Covering> coverings;
  for (std::size_t consecutive = 0;; ++consecutive) {
    if (consecutive == cfg.max_consecutive_discards)
      throw SamplingFailure("no submatrix with a covering after " + std::to_string(consecutive) +
                            " draws; the matrix likely has an all-zero row");
    rows = random_row_subset(L.rows(), cfg.r, rng);
    coverings = dualize(submatrix_rows(L, rows));
    if (!coverings.empty()) break;
    ++draw.discarded;
  }
  draw.values.reserve(cfg.u);
  for (std::size_t v = 0; v < cfg.u; ++v) {
    const Covering& h = coverings[rng.below(coverings.size())];
    draw.values.push_back(h.least());
    if (cfg.keep_trace) draw.trace.push_back({rows, h});
  }
  return draw;
}

void check_config(const SampleConfig& cfg, std::size_t m) {
  if (cfg.r < 1 || cfg.r > m) throw std::invalid_argument("r must lie in 1..m");
  if (cfg.t < 1 || cfg.u < 1) throw std::invalid_argument("t and u must be positive");
  if (cfg.max_consecutive_discards < 1) throw std::invalid_argument("discard limit must be positive");
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = next++; k < count; k = next++) fn(k);
        } catch (...) {
          errors[w] = std::current_exception();
          next = count;
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

FrequencyEstimate sample_eta(const BoolMatrix& L, const SampleConfig& cfg) {
  check_config(cfg, L.rows());
  std::vector<SubmatrixDraw> draws(cfg.t);
  parallel_for(cfg.t, cfg.threads, [&](std::size_t s) { draws[s] = draw_submatrix(L, cfg, s); });

  FrequencyEstimate est;
  est.config = cfg;
  est.sample.reserve(cfg.sample_size());
  std::vector<std::size_t> counts(L.cols(), 0);
  for (const auto& d : draws) {
    est.discarded += d.discarded;
    est.trace.insert(est.trace.end(), d.trace.begin(), d.trace.end());
    for (auto j : d.values) {
      est.sample.push_back(j);
      ++counts[j - 1];
    }
  }
  est.f_star.resize(L.cols());
  const auto total = static_cast<double>(est.sample.size());
  for (std::size_t j = 0; j < L.cols(); ++j) est.f_star[j] = static_cast<double>(counts[j]) / total;
  return est;
}

void write_estimate(std::ostream& out, std::span<const double> f_star) {
  char buf[64];
  for (std::size_t j = 0; j < f_star.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%zu %.17g\n", j + 1, f_star[j]);
    out << buf;
  }
}

std::vector<double> read_estimate(std::istream& in) {
  std::vector<double> f;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) throw ParseError(lineno, "empty line in estimate");
    std::istringstream fields(line);
    std::size_t j = 0;
    double value = 0.0;
    std::string extra;
    if (!(fields >> j >> value) || (fields >> extra))
      throw ParseError(lineno, "expected \"j f_star_j\"");
    if (j != lineno) throw ParseError(lineno, "expected subtask index " + std::to_string(lineno));
    if (value < 0.0) throw ParseError(lineno, "negative estimate");
    f.push_back(value);
  }
  if (f.empty()) throw ParseError(1, "estimate is empty");
  return f;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<ValidationRow> validation_experiment(const ValidationConfig& cfg) {
  if (cfg.matrices_per_shape < 1) throw std::invalid_argument("need at least one matrix per shape");
  std::vector<ValidationRow> rows;
  for (std::size_t shape_index = 0; shape_index < cfg.shapes.size(); ++shape_index) {
    const auto [m, n] = cfg.shapes[shape_index];
    GenSpec spec{m, n, cfg.density, true, 0};
    Rng shape_rng = Rng::substream(cfg.seed, shape_index);

    struct Instance {
      BoolMatrix L;
      std::vector<double> nu;
      std::uint64_t sample_seed;
    };
    std::vector<Instance> instances;
    while (instances.size() < cfg.matrices_per_shape) {
      BoolMatrix L = random_matrix(spec, shape_rng);
      const ExactSizes exact = exact_subtask_sizes(L);
      if (exact.empty()) continue;
      instances.push_back({std::move(L), exact.nu, shape_rng()});
    }

    for (auto r : cfg.r_values) {
      if (r > m || (r == m && !cfg.include_full_height)) continue;
      std::vector<double> zs;
      std::vector<double> ps;
      for (const auto& inst : instances) {
        SampleConfig sc{r, cfg.t, cfg.u, inst.sample_seed ^ (0xd1b54a32d192ed03ULL * r), cfg.threads};
        const auto est = sample_eta(inst.L, sc);
        const auto res = chi_squared_test(est.f_star, inst.nu, sc.sample_size(), cfg.dof_rule);
        zs.push_back(res.Z);
        ps.push_back(res.p_value);
      }
      rows.push_back({spec.shape(), r, median(std::move(zs)), median(std::move(ps))});
    }
  }
  return rows;
}

void write_validation_csv(std::ostream& out, const std::vector<ValidationRow>& rows) {
  out << "shape,r,median_Z,median_pvalue\n";
  char buf[128];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%.6g,%.6g\n", row.shape.c_str(), row.r, row.median_Z,
                  row.median_pvalue);
    out << buf;
  }
}

}  // namespace irredcov
