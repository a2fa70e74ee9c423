#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "irredcov/bitmatrix.hpp"
#include "irredcov/estimator.hpp"
#include "irredcov/oracle.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(IRREDCOV_CLI) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, got);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("irredcov_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::set<std::string> lines(const std::string& text) {
  std::set<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.insert(l);
  return out;
}

}  // namespace

TEST_CASE("dualize prints coverings, subtasks and counts") {
  TempDir tmp;
  const auto example = tmp.file("ex.txt", "3 4\n1100\n0110\n0011\n");
  auto r = run("dualize " + example);
  CHECK(r.code == 0);
  CHECK(r.out == "1 3\n2 3\n2 4\n");
  CHECK(run("dualize " + example + " --subtask 2").out == "2 3\n2 4\n");

  std::ostringstream id;
  irredcov::write_matrix(id, irredcov::BoolMatrix::identity(5));
  CHECK(run("dualize " + tmp.file("id.txt", id.str()) + " --count-only").out == "1\n");
}

TEST_CASE("subtask outputs concatenate to the full output") {
  TempDir tmp;
  const auto m = tmp.path("m.txt");
  REQUIRE(run("gen 9 11 --seed 3 -o " + m).code == 0);
  const auto full = run("dualize " + m).out;
  std::string merged;
  for (int j = 1; j <= 11; ++j) merged += run("dualize " + m + " --subtask " + std::to_string(j)).out;
  CHECK(lines(merged) == lines(full));
  CHECK(std::count(merged.begin(), merged.end(), '\n') == std::count(full.begin(), full.end(), '\n'));
}

TEST_CASE("gen is deterministic and round-trips") {
  TempDir tmp;
  const auto a = run("gen 3 4 --density 0.5 --seed 7");
  const auto b = run("gen 3 4 --density 0.5 --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream in(a.out);
  const auto L = irredcov::read_matrix(in);
  CHECK(L.rows() == 3);
  CHECK(L.cols() == 4);
  std::ostringstream again;
  irredcov::write_matrix(again, L);
  CHECK(again.str() == a.out);

  const auto dense = run("gen 4 6 --density 0.999999 --seed 1");
  CHECK(dense.out == "4 6\n111111\n111111\n111111\n111111\n");

  const auto sparse = tmp.path("sparse.txt");
  run("gen 60 4 --density 0.01 --allow-zero-rows --seed 2 -o " + sparse);
  CHECK(run("dualize " + sparse + " --count-only").out == "0\n");
}

TEST_CASE("oracle reports MATCH and sweeps random seeds") {
  TempDir tmp;
  const auto example = tmp.file("ex.txt", "3 4\n1100\n0110\n0011\n");
  auto r = run("oracle " + example);
  CHECK(r.code == 0);
  CHECK(r.out == "1 3\n2 3\n2 4\nMATCH\n");

  std::ostringstream id;
  irredcov::write_matrix(id, irredcov::BoolMatrix::identity(3));
  CHECK(run("oracle " + tmp.file("id.txt", id.str())).code == 0);

  for (int seed = 1; seed <= 50; ++seed) {
    const auto m = tmp.path("r.txt");
    run("gen 10 12 --seed " + std::to_string(seed) + " -o " + m);
    const auto o = run("oracle " + m);
    CHECK(o.code == 0);
    CHECK(o.out.size() >= 6);
    CHECK(o.out.substr(o.out.size() - 6) == "MATCH\n");
  }
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(run("").code == 1);
  CHECK(run("dualize").code == 1);
  CHECK(run("dualize " + tmp.path("missing.txt")).code == 1);
  CHECK(run("dualize " + tmp.file("bad.txt", "2 3\n101\n1x1\n")).code == 1);
  CHECK(run("gen 3 3 --density 1.5 --seed 1").code == 1);
  CHECK(run("validate --shape 3by4 --r 2 --seed 1").code == 1);

  const auto wide = tmp.path("wide.txt");
  run("gen 3 22 --seed 1 -o " + wide);
  CHECK(run("oracle " + wide).code == 3);
}

TEST_CASE("estimate at full height tracks the exact subtask sizes") {
  TempDir tmp;
  const auto m = tmp.path("m.txt");
  run("gen 8 10 --seed 11 -o " + m);
  const auto L = irredcov::read_matrix_file(m);
  const auto exact = irredcov::exact_subtask_sizes(L, irredcov::ExactMethod::BruteForce);
  const auto est = run("estimate " + m + " --r 8 --t 1 --u 5000 --seed 3");
  REQUIRE(est.code == 0);
  std::istringstream in(est.out);
  const auto f = irredcov::read_estimate(in);
  REQUIRE(f.size() == 10);
  for (std::size_t j = 0; j < 10; ++j) CHECK(std::fabs(f[j] - exact.nu[j]) <= 0.03);
  CHECK(run("estimate " + m + " --seed 3").code == 0);
}

TEST_CASE("schedule from an estimate file") {
  TempDir tmp;
  const auto f = tmp.file("f.txt", "1 0.4\n2 0.3\n3 0.2\n4 0.1\n");
  const auto r = run("schedule " + f + " --p 2");
  CHECK(r.code == 0);
  CHECK(r.out == "1 1\n2 2\n3 2\n4 1\n1 0.5\n2 0.5\n");
  CHECK(run("schedule " + f + " --p 5").code == 1);
  CHECK(run("schedule " + tmp.file("g.txt", "1 0.4\n3 0.6\n") + " --p 1").code == 1);
}

TEST_CASE("validate and bench write their CSVs") {
  TempDir tmp;
  const auto v = run("validate --shape 8x12 --r 3 --r 5 --matrices 2 --t 4 --u 10 --seed 1");
  CHECK(v.code == 0);
  CHECK(v.out.rfind("shape,r,median_Z,median_pvalue\n8x12,3,", 0) == 0);

  const auto workers = tmp.path("workers.csv");
  const auto b = run("bench --shape 10x20 --p 1 --repetitions 1 --t 4 --u 10 --seed 2 --workers-output " +
                     workers);
  CHECK(b.code == 0);
  CHECK(b.out.rfind("shape,n_cols,p,T_seconds,S,E,estimation_seconds,repetitions\n10x20,20,1,", 0) == 0);
  std::ifstream w(workers);
  std::string header;
  std::getline(w, header);
  CHECK(header == "shape,p,k,T_k,s_k,count_k");
}
