#include "irredcov/chi_squared.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace irredcov {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// Power series for P(a, x); converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz); for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("incomplete gamma needs a > 0");
  if (!(x >= 0.0)) throw std::invalid_argument("incomplete gamma needs x >= 0");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi_squared_statistic(std::span<const double> f_star, std::span<const double> nu,
                             std::size_t sample_size) {
  if (f_star.size() != nu.size()) throw std::invalid_argument("frequency and nu lengths differ");
  double f_sum = 0.0;
  double nu_sum = 0.0;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    if (f_star[j] < 0.0 || nu[j] < 0.0) throw std::invalid_argument("negative probability");
    f_sum += f_star[j];
    nu_sum += nu[j];
  }
  if (std::fabs(f_sum - 1.0) > 1e-9 || std::fabs(nu_sum - 1.0) > 1e-9)
    throw std::invalid_argument("frequency and nu vectors must each sum to 1");

  double z = 0.0;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    if (nu[j] > 0.0) {
      const double diff = f_star[j] - nu[j];
      z += diff * diff / nu[j];
    } else if (f_star[j] > 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return static_cast<double>(sample_size) * z;
}

double chi_squared_pvalue(double Z, std::size_t dof) {
  if (dof == 0) throw std::invalid_argument("degrees of freedom must be positive");
  if (std::isnan(Z) || Z < 0.0) throw std::invalid_argument("statistic must be nonnegative");
  if (std::isinf(Z)) return 0.0;
  return regularized_gamma_q(0.5 * static_cast<double>(dof), 0.5 * Z);
}

ChiSquaredResult chi_squared_test(std::span<const double> f_star, std::span<const double> nu,
                                  std::size_t sample_size, DofRule rule) {
  ChiSquaredResult result;
  result.Z = chi_squared_statistic(f_star, nu, sample_size);
  std::size_t cells = nu.size();
  if (rule == DofRule::SupportMinusOne) {
    cells = 0;
    for (double v : nu)
      if (v > 0.0) ++cells;
  }
  result.dof = cells > 1 ? cells - 1 : 1;
  result.p_value = chi_squared_pvalue(result.Z, result.dof);
  return result;
}

}  // namespace irredcov
