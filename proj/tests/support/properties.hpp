#pragma once

// Randomized property checks shared by the property suite and the
// acceptance runner. Each returns ok plus a short description of the first
// counterexample (or a summary when ok).

#include <cstdint>
#include <string>

namespace props {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome step_up_nesting(std::uint64_t seed, int trials);
Outcome attained_bfdr_bounded(std::uint64_t seed, int trials);
Outcome bh_nesting(std::uint64_t seed, int trials);
Outcome combiners_monotone(std::uint64_t seed, int trials);
// pi1 = 0: X given K follows Binom(K, eps/3); chi-squared at the 0.001 level.
Outcome simulator_null_chi_square(std::uint64_t seed, std::size_t pairs);
// Pure-null per-pool p-values: ECDF(q) <= q + 3 standard errors.
Outcome null_pvalues_superuniform(std::uint64_t seed, std::size_t sites);
Outcome counts_round_trip(std::uint64_t seed);
Outcome calls_round_trip(std::uint64_t seed);
// Simulation, moments, scores, calls and benchmark output identical for
// 1 and several threads.
Outcome thread_determinism(std::uint64_t seed);

}  // namespace props
