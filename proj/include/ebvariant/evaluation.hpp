#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ebvariant/embayes.hpp"
#include "ebvariant/simulator.hpp"

namespace ebvariant {

// Confusion counts of one replication.
struct ConfusionCounts {
  std::size_t rejected = 0;        // R
  std::size_t false_rejected = 0;  // V
  std::size_t accepted = 0;        // A
  std::size_t false_accepted = 0;  // U
  std::size_t nonnulls = 0;

  std::size_t true_rejected() const { return rejected - false_rejected; }
  double fdp() const;  // V / (R v 1)
  double fnp() const;  // U / (A v 1)
  double sensitivity() const;
};

struct EvaluationReport {
  double ER = 0.0;
  double EV = 0.0;
  double FDR = 0.0;
  double FNR = 0.0;
  double sensitivity = 0.0;
  std::size_t replications = 0;

  double true_rejections() const { return ER - EV; }
};

ConfusionCounts score_callset(const CallSet& calls, const LatentTruth& truth);

// Means over replications; FDR and FNR are means of per-replication ratios.
EvaluationReport aggregate_replications(std::span<const ConfusionCounts> reps);

struct RocPoint {
  std::size_t k = 0;  // number of top-ranked sites called
  double fdr = 0.0;
  double sensitivity = 0.0;
};
using RocCurve = std::vector<RocPoint>;

// Accumulates top-k FDR and sensitivity across replications. Smaller score
// means stronger evidence; ties keep index order.
class RocAccumulator {
 public:
  explicit RocAccumulator(std::size_t max_calls);

  void add(const std::vector<double>& scores, std::span<const std::uint8_t> mu);
  RocCurve curve() const;
  std::size_t replications() const { return replications_; }

 private:
  std::size_t max_calls_;
  std::size_t replications_ = 0;
  std::size_t reach_ = 0;  // smallest p seen, bounds k
  std::vector<double> fdr_sum_;
  std::vector<double> sens_sum_;
};

struct RankedReplication {
  std::vector<double> scores;
  std::vector<std::uint8_t> mu;
};

RocCurve roc_from_scores(std::span<const RankedReplication> reps, std::size_t max_calls);

// Largest sensitivity among curve points with fdr <= level (0 if none).
double sensitivity_at_fdr(const RocCurve& curve, double level);

struct GoldStandardResult {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t other = 0;  // called but absent from the gold standard
  std::optional<double> fdr;
};

// FP / (TP + FP) over calls with known status; absent when no call overlaps.
GoldStandardResult gold_standard_fdr(const CallSet& calls,
                                     const std::vector<std::string>& site_ids,
                                     const std::unordered_map<std::string, bool>& gold);

}  // namespace ebvariant
