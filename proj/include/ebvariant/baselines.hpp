#pragma once

#include <span>
#include <vector>

#include "ebvariant/embayes.hpp"
#include "ebvariant/model.hpp"

namespace ebvariant {

using PValueVector = std::vector<double>;

// Exact upper tail P(Binom(K, eps/3) >= X) of the error-only null.
double pool_pvalue(Count depth, Count alt, const PoolDesign& design);

// Simes combination for the partial conjunction "at least one of M pools is
// non-null": min_j (M / j) p_(j), capped at 1.
double simes_partial_conjunction(std::span<const double> pool_ps);

// Fisher's method: P(chi2_{2M} > -2 sum log p_j). Zeros are floored at 1e-300.
double fisher_meta(std::span<const double> pool_ps);

// Benjamini-Hochberg step-up at level alpha.
CallSet bh_procedure(const PValueVector& ps, double alpha);

enum class Combiner { kSimes, kFisher };

// Per-site combined p-values from the per-pool tests.
PValueVector combined_pvalues(const SiteCountMatrix& data, const PoolDesign& design,
                              Combiner combiner, int threads = 1);

struct BaselineResult {
  CallSet calls;
  PValueVector pvalues;
};

BaselineResult snver_call(const SiteCountMatrix& data, const PoolDesign& design,
                          double alpha, int threads = 1);
BaselineResult meta_call(const SiteCountMatrix& data, const PoolDesign& design,
                         double alpha, int threads = 1);

}  // namespace ebvariant
