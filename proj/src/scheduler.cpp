#include "irredcov/scheduler.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace irredcov {

std::vector<std::size_t> Schedule::tasks_of(std::size_t k) const {
  std::vector<std::size_t> tasks;
  for (std::size_t j = 0; j < assignment.size(); ++j)
    if (assignment[j] == k) tasks.push_back(j + 1);
  return tasks;
}

Schedule distribute_tasks(std::size_t p, std::span<const double> f_star, TaskOrder order) {
  const std::size_t n = f_star.size();
  if (p < 1) throw std::invalid_argument("need at least one worker");
  if (p > n) throw std::invalid_argument("more workers than subtasks");
  for (double f : f_star)
    if (!(f >= 0.0)) throw std::invalid_argument("subtask estimates must be nonnegative");

  std::vector<std::size_t> sequence(n);
  std::iota(sequence.begin(), sequence.end(), std::size_t{0});
  if (order == TaskOrder::LargestFirst)
    std::stable_sort(sequence.begin(), sequence.end(),
                     [&](std::size_t a, std::size_t b) { return f_star[a] > f_star[b]; });

  Schedule s;
  s.p = p;
  s.assignment.assign(n, 0);
  s.predicted_load.assign(p, 0.0);
  for (auto j : sequence) {
    // min_element returns the first minimum, i.e. the lowest worker index.
    const auto k0 = static_cast<std::size_t>(
        std::min_element(s.predicted_load.begin(), s.predicted_load.end()) - s.predicted_load.begin());
    s.assignment[j] = k0 + 1;
    s.predicted_load[k0] += f_star[j];
  }
  return s;
}

double schedule_makespan(const Schedule& s) {
  if (s.predicted_load.empty()) throw std::invalid_argument("schedule has no workers");
  return *std::max_element(s.predicted_load.begin(), s.predicted_load.end());
}

void write_schedule(std::ostream& out, const Schedule& s) {
  char buf[64];
  for (std::size_t j = 0; j < s.assignment.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%zu %zu\n", j + 1, s.assignment[j]);
    out << buf;
  }
  for (std::size_t k = 0; k < s.predicted_load.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu %.17g\n", k + 1, s.predicted_load[k]);
    out << buf;
  }
}

}  // namespace irredcov
