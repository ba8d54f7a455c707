#pragma once

#include <cstddef>

#include "ebvariant/model.hpp"

namespace ebvariant {

// Method-of-moments statistics over all (site, pool) pairs with depth >= 2.
struct MomentSummary {
  double m1 = 0.0;
  double m2 = 0.0;
  std::size_t n_terms = 0;
  std::size_t excluded = 0;  // pairs dropped for depth < 2
};

struct EstimatedHyperparameters {
  double raw_a = 0.0;
  double raw_pi1 = 0.0;
  Hyperparameters hyper;
  bool truncated_a = false;
  bool truncated_pi1 = false;
  // Set when a positive raw estimate was clamped to its upper bound.
  bool clamped_a = false;
  bool clamped_pi1 = false;
};

inline constexpr double kTruncatedA = 0.01;
inline constexpr double kTruncatedPi1 = 0.001;
inline constexpr double kMaxPi1 = 0.999;

// Throws EstimationError when no pair has depth >= 2.
MomentSummary compute_moments(const SiteCountMatrix& data, const PoolDesign& design,
                              int threads = 1);

// Inverts the moment equations and applies truncation and clamping.
// Throws UnsupportedDesign for N = 1.
EstimatedHyperparameters estimate_hyperparameters(const MomentSummary& moments,
                                                  const PoolDesign& design);

// Expected m1 and m2 under the model, used for plug-in checks.
MomentSummary expected_moments(double pi1, double a, const PoolDesign& design);

}  // namespace ebvariant
