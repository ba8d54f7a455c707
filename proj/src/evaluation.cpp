#include "ebvariant/evaluation.hpp"

#include <algorithm>

#include "ebvariant/errors.hpp"

namespace ebvariant {

double ConfusionCounts::fdp() const {
  return static_cast<double>(false_rejected) / static_cast<double>(std::max<std::size_t>(rejected, 1));
}

double ConfusionCounts::fnp() const {
  return static_cast<double>(false_accepted) / static_cast<double>(std::max<std::size_t>(accepted, 1));
}

double ConfusionCounts::sensitivity() const {
  return nonnulls ? static_cast<double>(true_rejected()) / static_cast<double>(nonnulls) : 0.0;
}

ConfusionCounts score_callset(const CallSet& calls, const LatentTruth& truth) {
  if (calls.decisions.size() != truth.mu.size())
    throw DomainError("call set and truth have different lengths");
  ConfusionCounts c;
  for (std::size_t i = 0; i < calls.decisions.size(); ++i) {
    const bool rejected = calls.decisions[i] != 0;
    const bool variant = truth.mu[i] != 0;
    c.nonnulls += variant;
    if (rejected) {
      ++c.rejected;
      c.false_rejected += !variant;
    } else {
      ++c.accepted;
      c.false_accepted += variant;
    }
  }
  return c;
}

EvaluationReport aggregate_replications(std::span<const ConfusionCounts> reps) {
  if (reps.empty()) throw DomainError("no replications to aggregate");
  EvaluationReport r;
  for (const auto& c : reps) {
    r.ER += static_cast<double>(c.rejected);
    r.EV += static_cast<double>(c.false_rejected);
    r.FDR += c.fdp();
    r.FNR += c.fnp();
    r.sensitivity += c.sensitivity();
  }
  const double n = static_cast<double>(reps.size());
  r.ER /= n;
  r.EV /= n;
  r.FDR /= n;
  r.FNR /= n;
  r.sensitivity /= n;
  r.replications = reps.size();
  return r;
}

RocAccumulator::RocAccumulator(std::size_t max_calls)
    : max_calls_(max_calls), reach_(max_calls) {
  if (max_calls == 0) throw DomainError("ROC needs max_calls >= 1");
  fdr_sum_.assign(max_calls, 0.0);
  sens_sum_.assign(max_calls, 0.0);
}

void RocAccumulator::add(const std::vector<double>& scores, std::span<const std::uint8_t> mu) {
  if (scores.size() != mu.size()) throw DomainError("scores and truth have different lengths");
  std::size_t nonnulls = 0;
  for (auto m : mu) nonnulls += m != 0;

  const std::size_t limit = std::min(max_calls_, scores.size());
  std::vector<std::size_t> idx(scores.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto less = [&](std::size_t l, std::size_t r) {
    return scores[l] < scores[r] || (scores[l] == scores[r] && l < r);
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(limit), idx.end(), less);

  std::size_t tp = 0;
  for (std::size_t k = 1; k <= limit; ++k) {
    tp += mu[idx[k - 1]] != 0;
    fdr_sum_[k - 1] += static_cast<double>(k - tp) / static_cast<double>(k);
    sens_sum_[k - 1] += nonnulls ? static_cast<double>(tp) / static_cast<double>(nonnulls) : 0.0;
  }
  reach_ = std::min(reach_, limit);
  ++replications_;
}

RocCurve RocAccumulator::curve() const {
  RocCurve out;
  if (replications_ == 0) return out;
  const double n = static_cast<double>(replications_);
  out.reserve(reach_);
  for (std::size_t k = 1; k <= reach_; ++k)
    out.push_back({k, fdr_sum_[k - 1] / n, sens_sum_[k - 1] / n});
  return out;
}

RocCurve roc_from_scores(std::span<const RankedReplication> reps, std::size_t max_calls) {
  RocAccumulator acc(max_calls);
  for (const auto& r : reps) acc.add(r.scores, r.mu);
  return acc.curve();
}

double sensitivity_at_fdr(const RocCurve& curve, double level) {
  double best = 0.0;
  for (const auto& pt : curve)
    if (pt.fdr <= level) best = std::max(best, pt.sensitivity);
  return best;
}

GoldStandardResult gold_standard_fdr(const CallSet& calls,
                                     const std::vector<std::string>& site_ids,
                                     const std::unordered_map<std::string, bool>& gold) {
  if (calls.decisions.size() != site_ids.size())
    throw DomainError("call set and site ids have different lengths");
  GoldStandardResult r;
  for (std::size_t i = 0; i < site_ids.size(); ++i) {
    if (!calls.decisions[i]) continue;
    const auto it = gold.find(site_ids[i]);
    if (it == gold.end())
      ++r.other;
    else if (it->second)
      ++r.true_positives;
    else
      ++r.false_positives;
  }
  const std::size_t known = r.true_positives + r.false_positives;
  if (known > 0) r.fdr = static_cast<double>(r.false_positives) / static_cast<double>(known);
  return r;
}

}  // namespace ebvariant
