#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ebvariant/model.hpp"
#include "ebvariant/moments.hpp"

namespace ebvariant {

enum class CallMode { kEmpirical, kOracle, kFixed, kPValue };

std::string to_string(CallMode mode);

// Per-site reject/accept decisions of one multiple-testing run.
struct CallSet {
  std::vector<std::uint8_t> decisions;  // 1 = rejected (variant called)
  std::vector<std::size_t> rank;        // 1-based position in the ranking
  std::size_t num_rejected = 0;
  // Mean score over the rejected set; for p-value calls, the BH estimate
  // p * p_(k) / k at the cutoff. 0 when nothing is rejected.
  double attained_bfdr = 0.0;
  double alpha = 0.0;
  CallMode mode = CallMode::kEmpirical;
  std::optional<EstimatedHyperparameters> estimate;  // empirical mode
  std::optional<Hyperparameters> hyper_used;         // every fdr-based mode
};

// Ascending order of scores; ties keep the original index order.
std::vector<std::size_t> ascending_order(const std::vector<double>& scores);

// Rejects the largest prefix of sorted scores whose running mean is <= alpha.
CallSet step_up_call(const LocalFdrVector& scores, double alpha);

// Rejects every site with score < t.
CallSet threshold_call(const LocalFdrVector& scores, double t);

struct PipelineMode {
  CallMode mode = CallMode::kEmpirical;
  Hyperparameters hyper;  // used by oracle and fixed modes

  static PipelineMode empirical() { return {}; }
  static PipelineMode oracle(const Hyperparameters& h) { return {CallMode::kOracle, h}; }
  static PipelineMode fixed(const Hyperparameters& h) { return {CallMode::kFixed, h}; }
};

struct PipelineResult {
  CallSet calls;
  LocalFdrVector scores;
};

// Estimate (empirical mode only), score every site, then step up.
PipelineResult call_pipeline(const SiteCountMatrix& data, const PoolDesign& design,
                             double alpha, const PipelineMode& mode, int threads = 1);

}  // namespace ebvariant
