#include "ebvariant/baselines.hpp"

#include <algorithm>
#include <array>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "ebvariant/errors.hpp"
#include "ebvariant/parallel.hpp"

namespace ebvariant {

double pool_pvalue(Count depth, Count alt, const PoolDesign& design) {
  if (depth < 0 || alt < 0 || alt > depth)
    throw DomainError("pool_pvalue: need 0 <= alt_count <= depth");
  if (alt == 0) return 1.0;
  const double rate = design.null_alt_rate();
  if (rate == 0.0) return 0.0;
  const boost::math::binomial_distribution<double> null(depth, rate);
  // P(X >= alt) = P(X > alt - 1)
  return boost::math::cdf(boost::math::complement(null, alt - 1.0));
}

double simes_partial_conjunction(std::span<const double> pool_ps) {
  if (pool_ps.empty()) throw DomainError("simes: no p-values");
  std::vector<double> sorted(pool_ps.begin(), pool_ps.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double best = 1.0;
  for (std::size_t j = 0; j < sorted.size(); ++j)
    best = std::min(best, m / static_cast<double>(j + 1) * sorted[j]);
  return best;
}

double fisher_meta(std::span<const double> pool_ps) {
  if (pool_ps.empty()) throw DomainError("fisher: no p-values");
  double stat = 0.0;
  for (double p : pool_ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("fisher: p-values must lie in [0, 1]");
    stat += -2.0 * std::log(std::max(p, 1e-300));
  }
  // chi2 with 2M degrees of freedom: Q(M, stat / 2)
  return boost::math::gamma_q(static_cast<double>(pool_ps.size()), stat / 2.0);
}

CallSet bh_procedure(const PValueVector& ps, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  for (double p : ps)
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p-values must lie in [0, 1]");
  const auto order = ascending_order(ps);
  const double total = static_cast<double>(ps.size());
  std::size_t cutoff = 0;
  for (std::size_t k = 1; k <= order.size(); ++k)
    if (ps[order[k - 1]] <= static_cast<double>(k) * alpha / total) cutoff = k;

  CallSet out;
  out.decisions.assign(ps.size(), 0);
  out.rank.assign(ps.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    out.rank[order[pos]] = pos + 1;
    if (pos < cutoff) out.decisions[order[pos]] = 1;
  }
  out.num_rejected = cutoff;
  out.attained_bfdr =
      cutoff ? total * ps[order[cutoff - 1]] / static_cast<double>(cutoff) : 0.0;
  out.alpha = alpha;
  out.mode = CallMode::kPValue;
  return out;
}

PValueVector combined_pvalues(const SiteCountMatrix& data, const PoolDesign& design,
                              Combiner combiner, int threads) {
  design.validate();
  if (data.pools() != design.pools)
    throw DomainError("count matrix and design disagree on the number of pools");
  const int m = design.pools;
  PValueVector out(data.sites());
  parallel_for(data.sites(), threads, [&](std::size_t i) {
    std::array<double, 16> small{};
    std::vector<double> large;
    std::span<double> ps;
    if (m <= static_cast<int>(small.size())) {
      ps = std::span<double>(small.data(), m);
    } else {
      large.resize(m);
      ps = large;
    }
    for (int j = 0; j < m; ++j) ps[j] = pool_pvalue(data.depth(i, j), data.alt_count(i, j), design);
    out[i] = combiner == Combiner::kSimes ? simes_partial_conjunction(ps) : fisher_meta(ps);
  });
  return out;
}

BaselineResult snver_call(const SiteCountMatrix& data, const PoolDesign& design,
                          double alpha, int threads) {
  BaselineResult r;
  r.pvalues = combined_pvalues(data, design, Combiner::kSimes, threads);
  r.calls = bh_procedure(r.pvalues, alpha);
  return r;
}

BaselineResult meta_call(const SiteCountMatrix& data, const PoolDesign& design,
                         double alpha, int threads) {
  BaselineResult r;
  r.pvalues = combined_pvalues(data, design, Combiner::kFisher, threads);
  r.calls = bh_procedure(r.pvalues, alpha);
  return r;
}

}  // namespace ebvariant
