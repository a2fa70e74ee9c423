#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace irredcov {

/// Static assignment of subtasks 1..n to workers 1..p.
struct Schedule {
  std::size_t p = 0;
  std::vector<std::size_t> assignment;  // assignment[j-1] = worker of subtask j
  std::vector<double> predicted_load;   // predicted_load[k-1] = sigma_k

  std::size_t subtasks() const { return assignment.size(); }
  /// Subtasks of worker k in ascending order.
  std::vector<std::size_t> tasks_of(std::size_t k) const;
};

enum class TaskOrder {
  Ascending,          // j = 1..n, as given
  LargestFirst,       // by decreasing estimate (LPT), ties by index
};

/// Greedy list scheduling: each subtask goes to the currently least
/// loaded worker (lowest index on ties). Requires 1 <= p <= n and
/// nonnegative estimates.
Schedule distribute_tasks(std::size_t p, std::span<const double> f_star,
                          TaskOrder order = TaskOrder::Ascending);

/// Largest predicted worker load.
double schedule_makespan(const Schedule& s);

/// n lines "j N_j", then p lines "k sigma_k".
void write_schedule(std::ostream& out, const Schedule& s);

}  // namespace irredcov
