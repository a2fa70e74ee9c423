#pragma once

#include <cstddef>
#include <span>

namespace irredcov {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Pearson statistic N * sum over the support of nu of (f - nu)^2 / nu.
/// Returns +infinity when f puts mass on a cell where nu is zero.
/// Both vectors must have equal length and sum to 1 within 1e-9.
double chi_squared_statistic(std::span<const double> f_star, std::span<const double> nu,
                             std::size_t sample_size);

/// Upper tail 1 - CDF of chi-squared with dof degrees of freedom at Z.
/// Z = +infinity gives exactly 0.
double chi_squared_pvalue(double Z, std::size_t dof);

enum class DofRule {
  SupportMinusOne,  // cells with nu > 0, minus one (at least 1)
  ColumnsMinusOne,  // n - 1 regardless of empty cells
};

struct ChiSquaredResult {
  double Z = 0.0;
  std::size_t dof = 1;
  double p_value = 1.0;
};

ChiSquaredResult chi_squared_test(std::span<const double> f_star, std::span<const double> nu,
                                  std::size_t sample_size, DofRule rule = DofRule::SupportMinusOne);

}  // namespace irredcov
