#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "irredcov/estimator.hpp"
#include "irredcov/generate.hpp"
#include "irredcov/oracle.hpp"
#include "irredcov/rng.hpp"
#include "test_support.hpp"

using namespace irredcov;

namespace {

// Binomial 3-sigma half-width for an observed frequency.
double three_sigma(double p, double n) { return 3.0 * std::sqrt(p * (1.0 - p) / n) + 1e-12; }

// Exact distribution of the least column over uniform r-row subsets and
// uniform coverings of each, by enumerating every subset with the naive
// dualizer. Subsets without a covering are excluded (conditioning).
std::vector<double> exact_least_distribution(const BoolMatrix& L, std::size_t r) {
  std::vector<double> f(L.cols(), 0.0);
  std::size_t usable = 0;
  const std::uint32_t limit = std::uint32_t{1} << L.rows();
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != r) continue;
    RowSet w(L.rows());
    for (std::size_t i = 0; i < L.rows(); ++i)
      if (mask >> i & 1u) w.insert(i + 1);
    const auto P = testing::naive_minimal_coverings(submatrix_rows(L, w));
    if (P.empty()) continue;
    ++usable;
    for (const auto& h : P) f[h.least() - 1] += 1.0 / static_cast<double>(P.size());
  }
  for (auto& v : f) v /= static_cast<double>(usable);
  return f;
}

}  // namespace

TEST_CASE("rng is deterministic and bounded") {
  Rng a(42), b(42);
  for (int k = 0; k < 100; ++k) CHECK(a() == b());
  Rng c(7);
  for (int k = 0; k < 10000; ++k) {
    CHECK(c.below(13) < 13);
    const double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(Rng::substream(1, 0)() != Rng::substream(1, 1)());
  CHECK(Rng::substream(1, 5)() == Rng::substream(1, 5)());
}

TEST_CASE("random row subsets are uniform r-subsets") {
  Rng rng(9);
  std::map<std::vector<std::size_t>, int> counts;
  const int draws = 20000;
  for (int k = 0; k < draws; ++k) {
    const auto w = random_row_subset(5, 2, rng);
    CHECK(w.size() == 2);
    ++counts[w.elements()];
  }
  CHECK(counts.size() == 10);
  for (const auto& [subset, c] : counts)
    CHECK(std::fabs(c / double(draws) - 0.1) <= three_sigma(0.1, draws));
  CHECK_THROWS_AS(random_row_subset(5, 6, rng), std::invalid_argument);
  CHECK(random_row_subset(4, 4, rng).size() == 4);
}

TEST_CASE("generator honours density and the zero-row rule") {
  GenSpec spec{40, 50, 0.3, true, 12};
  const auto L = random_matrix(spec);
  std::size_t ones = 0;
  for (std::size_t i = 1; i <= L.rows(); ++i) ones += L.row(i).count();
  CHECK(std::fabs(ones / 2000.0 - 0.3) <= three_sigma(0.3, 2000));
  CHECK(random_matrix(spec) == L);

  GenSpec sparse{200, 5, 0.02, true, 3};
  const auto S = random_matrix(sparse);
  for (std::size_t i = 1; i <= S.rows(); ++i) CHECK(S.row(i).any());

  sparse.forbid_zero_rows = false;
  const auto Z = random_matrix(sparse);
  std::size_t zero_rows = 0;
  for (std::size_t i = 1; i <= Z.rows(); ++i) zero_rows += Z.row(i).none();
  CHECK(zero_rows > 0);

  CHECK_THROWS_AS(random_matrix(GenSpec{3, 3, 1.0, true, 0}), std::invalid_argument);
  CHECK_THROWS_AS(random_matrix(GenSpec{3, 3, 0.0, true, 0}), std::invalid_argument);
  CHECK_THROWS_AS(random_matrix(GenSpec{0, 3, 0.5, true, 0}), std::invalid_argument);
}

TEST_CASE("full-height sampling draws from the exact subtask distribution") {
  const auto L = testing::random_matrix(6, 8, 0.5, 21);
  const auto exact = exact_subtask_sizes(L, ExactMethod::BruteForce);
  REQUIRE_FALSE(exact.empty());
  const auto est = sample_eta(L, {6, 1, 20000, 5});
  CHECK(est.sample.size() == 20000);
  for (std::size_t j = 0; j < L.cols(); ++j)
    CHECK(std::fabs(est.f_star[j] - exact.nu[j]) <= three_sigma(exact.nu[j], 20000));
}

TEST_CASE("all-ones matrices give uniform frequencies at any height") {
  const auto L = BoolMatrix::ones(6, 5);
  for (std::size_t r : {1u, 3u, 6u}) {
    const auto est = sample_eta(L, {r, 40, 500, 17});
    for (double f : est.f_star) CHECK(std::fabs(f - 0.2) <= three_sigma(0.2, 20000));
  }
}

TEST_CASE("two-row samples of the worked example match exhaustive enumeration") {
  const auto L = testing::staircase();
  const auto expected = exact_least_distribution(L, 2);
  // Hand derivation: rows {1,2} -> {2},{1,3}; {1,3} -> {1,3},{1,4},{2,3},{2,4};
  // {2,3} -> {3},{2,4}.
  CHECK(expected[0] == doctest::Approx(1.0 / 3));
  CHECK(expected[1] == doctest::Approx(1.0 / 2));
  CHECK(expected[2] == doctest::Approx(1.0 / 6));
  CHECK(expected[3] == 0.0);

  const auto est = sample_eta(L, {2, 2000, 10, 99});
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(std::fabs(est.f_star[j] - expected[j]) <= three_sigma(expected[j], 20000));
}

TEST_CASE("sampled (submatrix, covering) pairs follow the uniform-uniform measure") {
  const auto L = testing::staircase();
  SampleConfig cfg{2, 10000, 1, 123};
  cfg.keep_trace = true;
  const auto est = sample_eta(L, cfg);
  REQUIRE(est.trace.size() == 10000);

  std::map<std::pair<std::vector<std::size_t>, Covering>, int> counts;
  for (const auto& d : est.trace) ++counts[{d.rows.elements(), d.covering}];

  // Each of the 3 row pairs has probability 1/3, split evenly over its coverings.
  std::map<std::pair<std::vector<std::size_t>, Covering>, double> expected;
  for (auto w : {std::vector<std::size_t>{1, 2}, {1, 3}, {2, 3}}) {
    RowSet rows(3);
    for (auto i : w) rows.insert(i);
    const auto P = testing::naive_minimal_coverings(submatrix_rows(L, rows));
    for (const auto& h : P) expected[{w, h}] = 1.0 / 3.0 / static_cast<double>(P.size());
  }
  CHECK(counts.size() == expected.size());
  for (const auto& [key, p] : expected)
    CHECK(std::fabs(counts[key] / 10000.0 - p) <= three_sigma(p, 10000));
}

TEST_CASE("estimates are reproducible and independent of thread count") {
  const auto L = testing::random_matrix(16, 30, 0.5, 4);
  SampleConfig cfg{8, 12, 40, 555};
  const auto a = sample_eta(L, cfg);
  const auto b = sample_eta(L, cfg);
  cfg.threads = 4;
  const auto c = sample_eta(L, cfg);
  CHECK(a.sample == b.sample);
  CHECK(a.sample == c.sample);
  CHECK(a.f_star == c.f_star);
  double sum = 0;
  for (double f : a.f_star) sum += f;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  for (auto j : a.sample) CHECK((j >= 1 && j <= 30));
}

TEST_CASE("submatrices without coverings are redrawn, then sampling gives up") {
  const auto L = BoolMatrix::from_strings({"1100", "0000", "0011", "1010"});
  const auto est = sample_eta(L, {2, 50, 5, 8});
  CHECK(est.discarded > 0);
  CHECK(est.sample.size() == 250);

  SampleConfig hopeless{4, 1, 1, 8};
  hopeless.max_consecutive_discards = 20;
  CHECK_THROWS_AS(sample_eta(L, hopeless), SamplingFailure);
  CHECK_THROWS_AS(sample_eta(L, {4, 1, 1, 8}), SamplingFailure);
}

TEST_CASE("sample configuration is validated") {
  const auto L = testing::staircase();
  CHECK_THROWS_AS(sample_eta(L, {0, 1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_eta(L, {4, 1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_eta(L, {2, 0, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_eta(L, {2, 1, 0, 0}), std::invalid_argument);
  CHECK(default_rows(30) == 15);
  CHECK(default_rows(25) == 13);
}

TEST_CASE("estimate dump format") {
  std::stringstream buf;
  const std::vector<double> f{0.4, 0.3, 0.2, 0.1};
  write_estimate(buf, f);
  CHECK(buf.str().substr(0, 6) == "1 0.40");
  CHECK(read_estimate(buf) == f);

  auto error_line = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_estimate(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(error_line("1 0.5\n3 0.5\n") == 2);
  CHECK(error_line("1 0.5\n2 x\n") == 2);
  CHECK(error_line("1 -0.5\n") == 1);
  CHECK(error_line("1 0.5 7\n") == 1);
  CHECK(error_line("") == 1);
}

TEST_CASE("median") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(median({}), std::invalid_argument);
}

TEST_CASE("validation experiment table") {
  ValidationConfig cfg;
  cfg.shapes = {{8, 12}};
  cfg.r_values = {2, 4, 8, 9};
  cfg.matrices_per_shape = 3;
  cfg.t = 10;
  cfg.u = 20;
  cfg.seed = 1;
  auto rows = validation_experiment(cfg);
  REQUIRE(rows.size() == 2);  // r = 8 (= m) and 9 skipped
  CHECK(rows[0].shape == "8x12");
  CHECK(rows[0].r == 2);
  for (const auto& row : rows) {
    CHECK(row.median_Z >= 0.0);
    CHECK(row.median_pvalue >= 0.0);
    CHECK(row.median_pvalue <= 1.0);
  }

  cfg.include_full_height = true;
  cfg.r_values = {8};
  cfg.t = 1;
  cfg.u = 2000;
  rows = validation_experiment(cfg);
  REQUIRE(rows.size() == 1);
  // Exact-distribution case: not systematically rejected.
  CHECK(rows[0].median_pvalue > 1e-3);

  std::stringstream csv;
  write_validation_csv(csv, rows);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "shape,r,median_Z,median_pvalue");
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("8x12,8,", 0) == 0);
}
