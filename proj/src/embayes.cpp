#include "ebvariant/embayes.hpp"

#include <algorithm>
#include <numeric>

#include "ebvariant/errors.hpp"

namespace ebvariant {

std::string to_string(CallMode mode) {
  switch (mode) {
    case CallMode::kEmpirical: return "empirical";
    case CallMode::kOracle: return "oracle";
    case CallMode::kFixed: return "fixed";
    case CallMode::kPValue: return "pvalue";
  }
  return "unknown";
}

std::vector<std::size_t> ascending_order(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return scores[l] < scores[r]; });
  return order;
}

namespace {

void check_scores(const LocalFdrVector& scores) {
  for (double s : scores)
    if (!(s >= 0.0 && s <= 1.0)) throw DomainError("fdr scores must lie in [0, 1]");
}

CallSet make_callset(const std::vector<std::size_t>& order, std::size_t rejected) {
  CallSet out;
  out.decisions.assign(order.size(), 0);
  out.rank.assign(order.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    out.rank[order[pos]] = pos + 1;
    if (pos < rejected) out.decisions[order[pos]] = 1;
  }
  out.num_rejected = rejected;
  return out;
}

}  // namespace

CallSet step_up_call(const LocalFdrVector& scores, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  check_scores(scores);
  const auto order = ascending_order(scores);

  std::size_t best = 0;
  double best_mean = 0.0;
  double running = 0.0;
  for (std::size_t k = 1; k <= order.size(); ++k) {
    running += scores[order[k - 1]];
    const double mean = running / static_cast<double>(k);
    if (mean <= alpha) {
      best = k;
      best_mean = mean;
    }
  }
  CallSet out = make_callset(order, best);
  out.attained_bfdr = best_mean;
  out.alpha = alpha;
  return out;
}

CallSet threshold_call(const LocalFdrVector& scores, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("threshold must lie in [0, 1]");
  check_scores(scores);
  const auto order = ascending_order(scores);
  std::size_t rejected = 0;
  double sum = 0.0;
  while (rejected < order.size() && scores[order[rejected]] < t)
    sum += scores[order[rejected++]];
  CallSet out = make_callset(order, rejected);
  out.attained_bfdr = rejected ? sum / static_cast<double>(rejected) : 0.0;
  out.alpha = t;
  return out;
}

PipelineResult call_pipeline(const SiteCountMatrix& data, const PoolDesign& design,
                             double alpha, const PipelineMode& mode, int threads) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  std::optional<EstimatedHyperparameters> estimate;
  Hyperparameters hyper = mode.hyper;
  switch (mode.mode) {
    case CallMode::kEmpirical:
      estimate = estimate_hyperparameters(compute_moments(data, design, threads), design);
      hyper = estimate->hyper;
      break;
    case CallMode::kOracle:
    case CallMode::kFixed:
      break;
    case CallMode::kPValue:
      throw DomainError("call_pipeline does not run p-value procedures");
  }
  PipelineResult result;
  result.scores = batch_local_fdr(data, design, hyper, threads);
  result.calls = step_up_call(result.scores, alpha);
  result.calls.mode = mode.mode;
  result.calls.estimate = estimate;
  result.calls.hyper_used = hyper;
  return result;
}

}  // namespace ebvariant
