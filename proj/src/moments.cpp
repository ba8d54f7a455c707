#include "ebvariant/moments.hpp"

#include <algorithm>
#include <cmath>

#include "ebvariant/errors.hpp"
#include "ebvariant/parallel.hpp"

namespace ebvariant {

MomentSummary compute_moments(const SiteCountMatrix& data, const PoolDesign& design,
                              int threads) {
  design.validate();
  if (data.pools() != design.pools)
    throw DomainError("count matrix and design disagree on the number of pools");

  const auto depths = data.depths();
  const auto alts = data.alt_counts();
  std::size_t used = 0;
  for (Count k : depths) used += k >= 2 ? 1 : 0;

  MomentSummary out;
  out.n_terms = used;
  out.excluded = depths.size() - used;
  if (used == 0)
    throw EstimationError("moment estimation needs at least one pair with depth >= 2");

  const double e3 = design.error_rate / 3.0;
  const double scale = design.signal_scale();
  const double n = static_cast<double>(used);

  out.m1 = deterministic_sum(depths.size(), threads, [&](std::size_t i) {
             if (depths[i] < 2) return 0.0;
             return static_cast<double>(alts[i]) / depths[i] - e3;
           }) / n;

  const double m1 = out.m1;
  const double e = design.error_rate;
  out.m2 = deterministic_sum(depths.size(), threads, [&](std::size_t i) {
             if (depths[i] < 2) return 0.0;
             const double k = depths[i];
             const double x = alts[i];
             const double num = x * x - k * k * (e * e / 9.0) - k * e3 * (1.0 - e3) -
                                k * (1.0 - 2.0 * e / 3.0) * m1 -
                                k * k * (2.0 * e / 3.0) * m1;
             return num / ((k * k - k) * scale * scale);
           }) / n;
  return out;
}

EstimatedHyperparameters estimate_hyperparameters(const MomentSummary& moments,
                                                  const PoolDesign& design) {
  design.validate();
  if (design.haploids < 2)
    throw UnsupportedDesign(
        "moment estimation needs at least two haploids per pool; supply a fixed a instead");

  EstimatedHyperparameters est;
  const double m1 = moments.m1;
  const double m2 = moments.m2;
  const double n = design.haploids;
  const double scale = design.signal_scale();

  if (m1 == 0.0) {
    est.truncated_a = est.truncated_pi1 = true;
    est.hyper = Hyperparameters::from_pi1(kTruncatedPi1, kTruncatedA);
    return est;
  }

  est.raw_a = 3.0 * (n * scale * m2 - m1) / (2.0 * m1 * (n - 1.0));
  double a = est.raw_a;
  if (!(a > 0.0)) {
    a = kTruncatedA;
    est.truncated_a = true;
  } else if (a < kTruncatedA || a > 1.0) {
    a = std::clamp(a, kTruncatedA, 1.0);
    est.clamped_a = true;
  }

  est.raw_pi1 = 2.0 * m1 / (scale * a);
  double pi1 = est.raw_pi1;
  if (!(pi1 > 0.0)) {
    pi1 = kTruncatedPi1;
    est.truncated_pi1 = true;
  } else if (pi1 < kTruncatedPi1 || pi1 > kMaxPi1) {
    pi1 = std::clamp(pi1, kTruncatedPi1, kMaxPi1);
    est.clamped_pi1 = true;
  }

  est.hyper = Hyperparameters::from_pi1(pi1, a);
  return est;
}

MomentSummary expected_moments(double pi1, double a, const PoolDesign& design) {
  const double n = design.haploids;
  MomentSummary out;
  out.m1 = design.signal_scale() * pi1 * a / 2.0;
  out.m2 = (n - 1.0) / n * pi1 * a * a / 3.0 + pi1 * a / (2.0 * n);
  out.n_terms = 1;
  return out;
}

}  // namespace ebvariant
