#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace ebvariant {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(x) + exp(y)) without overflow; either side may be -inf.
inline double log_sum_exp(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double hi = x > y ? x : y;
  const double lo = x > y ? y : x;
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(std::span<const double> values);

// count * log_p with the convention 0 * log(0) = 0.
inline double count_log(double count, double log_p) {
  return count == 0.0 ? 0.0 : count * log_p;
}

// log C(n, k) through lgamma; valid for 0 <= k <= n.
double log_choose(std::int64_t n, std::int64_t k);

// log of the Binomial(n, p) mass at k given log(p) and log(1 - p).
inline double log_binomial_pmf(std::int64_t k, std::int64_t n, double log_p,
                               double log_q) {
  return log_choose(n, k) + count_log(static_cast<double>(k), log_p) +
         count_log(static_cast<double>(n - k), log_q);
}

// Continued-fraction controls for the incomplete beta.
struct IncompleteBetaOptions {
  int max_iterations = 200;
  double tolerance = 1e-14;
};

// log I_x(a, b), the regularized incomplete beta function, for a, b > 0 and
// x in [0, 1]. Uses the Lentz continued fraction on whichever side of the
// mean converges fastest and falls back to tanh-sinh quadrature of the beta
// density when the fraction does not converge within the iteration budget.
double log_regularized_incomplete_beta(double a, double b, double x,
                                       const IncompleteBetaOptions& options = {});

inline double regularized_incomplete_beta(double a, double b, double x,
                                          const IncompleteBetaOptions& options = {}) {
  return std::exp(log_regularized_incomplete_beta(a, b, x, options));
}

// Sigmoid-style split of two log masses: l0 / (l0 + l1) in linear space.
// Returns NaN only when both sides are -inf.
inline double posterior_share(double log_first, double log_second) {
  if (log_first == kNegInf && log_second == kNegInf)
    return std::numeric_limits<double>::quiet_NaN();
  const double d = log_second - log_first;
  if (d > 0) {
    const double e = std::exp(-d);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(d));
}

}  // namespace ebvariant
