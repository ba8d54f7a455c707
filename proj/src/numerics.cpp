#include "ebvariant/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ebvariant/errors.hpp"

namespace ebvariant {

double log_sum_exp(std::span<const double> values) {
  double hi = kNegInf;
  for (double v : values) hi = std::max(hi, v);
  if (hi == kNegInf) return kNegInf;
  double s = 0.0;
  for (double v : values) s += std::exp(v - hi);
  return hi + std::log(s);
}

double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) throw DomainError("log_choose: need 0 <= k <= n");
  if (k == 0 || k == n) return 0.0;
  const auto nd = static_cast<double>(n);
  const auto kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
}

namespace {

constexpr double kTiny = 1e-300;

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
// Returns false when the budget runs out before convergence.
bool beta_continued_fraction(double a, double b, double x,
                             const IncompleteBetaOptions& opt, double& out) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= opt.max_iterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < opt.tolerance) {
      out = h;
      return true;
    }
  }
  return false;
}

double log_incomplete_beta_by_quadrature(double a, double b, double x) {
  const double lb = log_beta(a, b);
  auto density = [&](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) - lb);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double value = integrator.integrate(density, 0.0, x);
  return value > 0.0 ? std::log(std::min(value, 1.0)) : kNegInf;
}

}  // namespace

double log_regularized_incomplete_beta(double a, double b, double x,
                                       const IncompleteBetaOptions& options) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0))
    throw DomainError("incomplete beta: need a, b > 0 and x in [0, 1]");
  if (x == 0.0) return kNegInf;
  if (x == 1.0) return 0.0;

  const double lb = log_beta(a, b);
  const double log_x = std::log(x);
  const double log_1mx = std::log1p(-x);
  double cf = 0.0;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    if (beta_continued_fraction(a, b, x, options, cf))
      return a * log_x + b * log_1mx - std::log(a) - lb + std::log(cf);
  } else if (beta_continued_fraction(b, a, 1.0 - x, options, cf)) {
    const double complement = std::exp(b * log_1mx + a * log_x - std::log(b) - lb) * cf;
    return std::log1p(-std::min(complement, 1.0));
  }
  return log_incomplete_beta_by_quadrature(a, b, x);
}

}  // namespace ebvariant
