// irredcov: enumerate irreducible coverings of Boolean matrices and run the
// statically scheduled parallel enumeration.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irredcov/bitmatrix.hpp"
#include "irredcov/estimator.hpp"
#include "irredcov/generate.hpp"
#include "irredcov/oracle.hpp"
#include "irredcov/runcm.hpp"
#include "irredcov/runner.hpp"
#include "irredcov/scheduler.hpp"

namespace {

using namespace irredcov;

enum ExitCode { kOk = 0, kUsage = 1, kMismatch = 2, kCapExceeded = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::size_t, std::size_t> parse_shape(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    const auto m = std::stoul(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    const auto rest = text.substr(x + 1);
    const auto n = std::stoul(rest, &used);
    if (used != rest.size() || m == 0 || n == 0) throw std::invalid_argument(text);
    return {m, n};
  } catch (const std::logic_error&) {
    throw UsageError("shape must look like MxN, got \"" + text + "\"");
  }
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t seed) {
  if (opt->count() > 0) return seed;
  std::random_device rd;
  seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << seed << '\n';
  return seed;
}

// Writes to path, or to stdout when path is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  fn(out);
}

std::vector<double> read_estimate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_estimate(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irreducible covering enumeration with statically scheduled parallelism"};
  app.require_subcommand(1);

  // gen
  GenSpec gen;
  std::string gen_out;
  bool allow_zero_rows = false;
  auto* gen_cmd = app.add_subcommand("gen", "Write a random m-by-n matrix");
  gen_cmd->add_option("m", gen.m, "Rows")->required();
  gen_cmd->add_option("n", gen.n, "Columns")->required();
  gen_cmd->add_option("--density", gen.density, "Probability of a unit entry")->capture_default_str();
  auto* gen_seed = gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_flag("--allow-zero-rows", allow_zero_rows, "Keep all-zero rows instead of redrawing");
  gen_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // dualize
  std::string dual_file;
  std::size_t subtask = 0;
  bool count_only = false;
  auto* dual_cmd = app.add_subcommand("dualize", "Enumerate all irreducible coverings");
  dual_cmd->add_option("matrix", dual_file, "Matrix file")->required();
  dual_cmd->add_option("--subtask", subtask, "Only coverings whose least column is j");
  dual_cmd->add_flag("--count-only", count_only, "Print only the number of coverings");

  // oracle
  std::string oracle_file;
  std::size_t oracle_cap = kOracleColumnCap;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force coverings and compare with dualize");
  oracle_cmd->add_option("matrix", oracle_file, "Matrix file")->required();
  oracle_cmd->add_option("--cap", oracle_cap, "Largest n the brute force accepts")->capture_default_str();

  // estimate
  std::string est_file;
  std::string est_out;
  SampleConfig sample;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate relative subtask sizes from random submatrices");
  est_cmd->add_option("matrix", est_file, "Matrix file")->required();
  est_cmd->add_option("--r", sample.r, "Submatrix rows (default ceil(m/2))");
  est_cmd->add_option("--t", sample.t, "Number of submatrices")->capture_default_str();
  est_cmd->add_option("--u", sample.u, "Coverings drawn per submatrix")->capture_default_str();
  auto* est_seed = est_cmd->add_option("--seed", sample.seed, "RNG seed");
  est_cmd->add_option("--threads", sample.threads, "Sampling threads")->capture_default_str();
  est_cmd->add_option("-o,--output", est_out, "Output file (default stdout)");

  // validate
  ValidationConfig val;
  std::vector<std::string> val_shapes;
  std::string val_dof = "support";
  std::string val_out;
  auto* val_cmd = app.add_subcommand("validate", "Chi-squared validation of the estimator (median Z, p-value)");
  val_cmd->add_option("--shape", val_shapes, "Matrix shape MxN (repeatable)")->required();
  val_cmd->add_option("--r", val.r_values, "Submatrix heights")->required();
  val_cmd->add_option("--matrices", val.matrices_per_shape, "Matrices per shape")->capture_default_str();
  val_cmd->add_option("--t", val.t, "Submatrices per sample")->capture_default_str();
  val_cmd->add_option("--u", val.u, "Coverings per submatrix")->capture_default_str();
  val_cmd->add_option("--density", val.density, "Probability of a unit entry")->capture_default_str();
  auto* val_seed = val_cmd->add_option("--seed", val.seed, "RNG seed");
  val_cmd->add_option("--dof", val_dof, "Degrees of freedom: support (nonzero cells - 1) or columns (n - 1)")
      ->check(CLI::IsMember({"support", "columns"}))
      ->capture_default_str();
  val_cmd->add_flag("--include-full", val.include_full_height, "Also run r = m");
  val_cmd->add_option("--threads", val.threads, "Sampling threads")->capture_default_str();
  val_cmd->add_option("-o,--output", val_out, "CSV output (default stdout)");

  // schedule
  std::string sched_file;
  std::size_t sched_p = 1;
  bool sched_lpt = false;
  auto* sched_cmd = app.add_subcommand("schedule", "Greedy static schedule from an estimate file");
  sched_cmd->add_option("estimate", sched_file, "Estimate file (lines \"j f_j\")")->required();
  sched_cmd->add_option("--p", sched_p, "Workers")->required();
  sched_cmd->add_flag("--lpt", sched_lpt, "Process subtasks by decreasing estimate");

  // bench
  BenchConfig bench;
  std::vector<std::string> bench_shapes;
  std::string bench_out;
  std::string bench_workers_out;
  auto* bench_cmd = app.add_subcommand("bench", "Parallel enumeration benchmark");
  bench_cmd->add_option("--shape", bench_shapes, "Matrix shape MxN (repeatable)")->required();
  bench_cmd->add_option("--p", bench.p_values, "Worker counts")->capture_default_str();
  bench_cmd->add_option("--repetitions", bench.repetitions, "Runs per cell (median reported)")
      ->capture_default_str();
  bench_cmd->add_option("--density", bench.density, "Probability of a unit entry")->capture_default_str();
  auto* bench_seed = bench_cmd->add_option("--seed", bench.seed, "RNG seed");
  bench_cmd->add_option("--r", bench.r, "Submatrix rows for estimation (default ceil(m/2))");
  bench_cmd->add_option("--t", bench.t, "Submatrices for estimation")->capture_default_str();
  bench_cmd->add_option("--u", bench.u, "Coverings per submatrix")->capture_default_str();
  bench_cmd->add_flag("--allow-oversubscription", bench.allow_oversubscription,
                      "Permit more workers than hardware threads");
  bench_cmd->add_option("-o,--output", bench_out, "Benchmark CSV (default stdout)");
  bench_cmd->add_option("--workers-output", bench_workers_out, "Per-worker CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_cmd) {
      gen.forbid_zero_rows = !allow_zero_rows;
      gen.seed = resolve_seed(gen_seed, gen.seed);
      const BoolMatrix L = random_matrix(gen);
      with_output(gen_out, [&](std::ostream& out) { write_matrix(out, L); });
    } else if (*dual_cmd) {
      const BoolMatrix L = read_matrix_file(dual_file);
      if (subtask > L.cols()) throw UsageError("--subtask must lie in 1..n");
      std::size_t count = 0;
      auto sink = [&](const Covering& h) {
        ++count;
        if (!count_only) std::cout << h.to_string() << '\n';
        return true;
      };
      if (subtask > 0) {
        enumerate_subtask(L, subtask, sink);
      } else {
        enumerate(L, sink);
      }
      if (count_only) std::cout << count << '\n';
    } else if (*oracle_cmd) {
      const BoolMatrix L = read_matrix_file(oracle_file);
      const auto expected = brute_force_dualize(L, oracle_cap);
      for (const auto& h : expected) std::cout << h.to_string() << '\n';
      const auto produced = dualize(L);
      const std::set<Covering> produced_set(produced.begin(), produced.end());
      const bool match = produced_set == expected && produced_set.size() == produced.size();
      std::cout << (match ? "MATCH" : "MISMATCH") << '\n';
      if (!match) return kMismatch;
    } else if (*est_cmd) {
      const BoolMatrix L = read_matrix_file(est_file);
      if (sample.r == 0) sample.r = default_rows(L.rows());
      sample.seed = resolve_seed(est_seed, sample.seed);
      const auto est = sample_eta(L, sample);
      if (est.discarded > 0) std::cerr << "discarded submatrices: " << est.discarded << '\n';
      with_output(est_out, [&](std::ostream& out) { write_estimate(out, est.f_star); });
    } else if (*val_cmd) {
      for (const auto& s : val_shapes) val.shapes.push_back(parse_shape(s));
      val.dof_rule = val_dof == "columns" ? DofRule::ColumnsMinusOne : DofRule::SupportMinusOne;
      val.seed = resolve_seed(val_seed, val.seed);
      const auto rows = validation_experiment(val);
      with_output(val_out, [&](std::ostream& out) { write_validation_csv(out, rows); });
    } else if (*sched_cmd) {
      const auto f = read_estimate_file(sched_file);
      const auto s = distribute_tasks(sched_p, f, sched_lpt ? TaskOrder::LargestFirst : TaskOrder::Ascending);
      write_schedule(std::cout, s);
    } else if (*bench_cmd) {
      for (const auto& s : bench_shapes) bench.shapes.push_back(parse_shape(s));
      bench.seed = resolve_seed(bench_seed, bench.seed);
      const auto result = benchmark(bench);
      with_output(bench_out, [&](std::ostream& out) { write_bench_csv(out, result.rows); });
      if (!bench_workers_out.empty())
        with_output(bench_workers_out, [&](std::ostream& out) { write_worker_csv(out, result.workers); });
    }
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::exception& e) {
    // Malformed input, bad parameters and I/O failures.
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
