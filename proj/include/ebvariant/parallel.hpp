#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace ebvariant {

// Thread count from an explicit request, then EBVARIANT_THREADS, then the
// OpenMP default. Always >= 1.
int resolve_threads(std::optional<int> requested = std::nullopt);

// Fixed block size for reductions. Never derived from the thread count so
// that sums are identical for every degree of parallelism.
inline constexpr std::size_t kReductionBlock = 4096;

// Runs body(i) for i in [0, n). Iterations must be independent.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

// Sums term(i) over [0, n) in fixed blocks, then folds the block totals
// pairwise. The result depends only on n and the terms.
template <class Term>
double deterministic_sum(std::size_t n, int threads, Term&& term) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t lo = b * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[b] = s;
  });
  if (partial.empty()) return 0.0;
  while (partial.size() > 1) {
    std::vector<double> next((partial.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::size_t l = 2 * i;
      next[i] = l + 1 < partial.size() ? partial[l] + partial[l + 1] : partial[l];
    }
    partial.swap(next);
  }
  return partial.front();
}

}  // namespace ebvariant
