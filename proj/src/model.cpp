#include "ebvariant/model.hpp"

#include <cmath>
#include <sstream>

#include "ebvariant/errors.hpp"
#include "ebvariant/numerics.hpp"
#include "ebvariant/parallel.hpp"

namespace ebvariant {

void PoolDesign::validate() const {
  if (pools < 1) throw DomainError("pool design: need at least one pool");
  if (haploids < 1) throw DomainError("pool design: need at least one haploid per pool");
  if (!(error_rate >= 0.0 && error_rate < 0.5))
    throw DomainError("pool design: error rate must lie in [0, 0.5)");
}

double PoolDesign::read_alt_rate(int carriers) const {
  const double frac = static_cast<double>(carriers) / haploids;
  return frac * (1.0 - error_rate) + (1.0 - frac) * null_alt_rate();
}

SiteCountMatrix::SiteCountMatrix(int pools) : pools_(pools) {
  if (pools < 1) throw DomainError("count matrix: need at least one pool");
}

SiteCountMatrix SiteCountMatrix::from_rows(int pools, std::vector<std::string> ids,
                                           std::vector<Count> depths,
                                           std::vector<Count> alt_counts) {
  SiteCountMatrix out(pools);
  const std::size_t expected = ids.size() * static_cast<std::size_t>(pools);
  if (depths.size() != expected || alt_counts.size() != expected)
    throw DomainError("count matrix: storage does not match sites x pools");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] < 0 || alt_counts[i] < 0 || alt_counts[i] > depths[i])
      throw DomainError("site " + ids[i / pools] + ": need 0 <= alt_count <= depth");
  }
  out.ids_ = std::move(ids);
  out.depths_ = std::move(depths);
  out.alts_ = std::move(alt_counts);
  return out;
}

void SiteCountMatrix::reserve(std::size_t sites) {
  ids_.reserve(sites);
  depths_.reserve(sites * pools_);
  alts_.reserve(sites * pools_);
}

void SiteCountMatrix::add_site(std::string id, std::span<const Count> depths,
                               std::span<const Count> alt_counts) {
  if (depths.size() != static_cast<std::size_t>(pools_) ||
      alt_counts.size() != static_cast<std::size_t>(pools_))
    throw DomainError("site " + id + ": expected " + std::to_string(pools_) + " pools");
  for (int j = 0; j < pools_; ++j) {
    if (depths[j] < 0 || alt_counts[j] < 0 || alt_counts[j] > depths[j])
      throw DomainError("site " + id + ": need 0 <= alt_count <= depth in pool " +
                        std::to_string(j + 1));
  }
  ids_.push_back(std::move(id));
  depths_.insert(depths_.end(), depths.begin(), depths.end());
  alts_.insert(alts_.end(), alt_counts.begin(), alt_counts.end());
}

SiteObservation SiteCountMatrix::site(std::size_t i) const {
  const std::size_t off = i * pools_;
  return {std::span<const Count>(depths_).subspan(off, pools_),
          std::span<const Count>(alts_).subspan(off, pools_)};
}

void Hyperparameters::validate() const {
  if (!(pi1 >= 0.0 && pi1 <= 1.0) || !(pi0 >= 0.0 && pi0 <= 1.0))
    throw DomainError("hyperparameters: pi0 and pi1 must be probabilities");
  if (std::fabs(pi0 + pi1 - 1.0) > 1e-12)
    throw DomainError("hyperparameters: pi0 + pi1 must equal 1");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hyperparameters: a must lie in (0, 1]");
}

namespace {

void check_counts(Count depth, Count alt) {
  if (depth < 0 || alt < 0 || alt > depth) {
    std::ostringstream msg;
    msg << "invalid counts: depth " << depth << ", alt_count " << alt;
    throw DomainError(msg.str());
  }
}

}  // namespace

LocalFdrModel::LocalFdrModel(const PoolDesign& design, const Hyperparameters& hyper,
                             bool tabulate)
    : design_(design), hyper_(hyper) {
  design_.validate();
  hyper_.validate();

  log_null_p_ = std::log(design_.null_alt_rate());
  log_null_q_ = std::log1p(-design_.null_alt_rate());

  // (1/a) C(N,n) int_0^a t^n (1-t)^(N-n) dt = I_a(n+1, N-n+1) / (a (N+1))
  const int n_max = design_.haploids;
  const double log_norm = std::log(hyper_.a) + std::log(n_max + 1.0);
  log_weight_.resize(n_max + 1);
  log_p_.resize(n_max + 1);
  log_q_.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    log_weight_[n] =
        log_regularized_incomplete_beta(n + 1.0, n_max - n + 1.0, hyper_.a) - log_norm;
    const double p = design_.read_alt_rate(n);
    log_p_[n] = std::log(p);
    log_q_[n] = std::log1p(-p);
  }

  if (tabulate) {
    null_table_.resize(static_cast<std::size_t>(kTableDepth) * kTableAlt, kNegInf);
    alt_table_.resize(null_table_.size(), kNegInf);
    for (Count k = 0; k < kTableDepth; ++k) {
      for (Count x = 0; x < kTableAlt && x <= k; ++x) {
        const std::size_t idx = static_cast<std::size_t>(k) * kTableAlt + x;
        null_table_[idx] = direct_null(k, x);
        alt_table_[idx] = direct_alt(k, x);
      }
    }
  }
}

double LocalFdrModel::direct_null(Count depth, Count alt) const {
  return log_binomial_pmf(alt, depth, log_null_p_, log_null_q_);
}

double LocalFdrModel::direct_alt(Count depth, Count alt) const {
  const double x = alt;
  const double y = static_cast<double>(depth) - alt;
  // streaming log-sum-exp over carrier counts n
  double hi = kNegInf;
  double acc = 0.0;
  for (std::size_t n = 0; n < log_weight_.size(); ++n) {
    const double v = log_weight_[n] + count_log(x, log_p_[n]) + count_log(y, log_q_[n]);
    if (v == kNegInf) continue;
    if (v > hi) {
      acc = acc * std::exp(hi - v) + 1.0;
      hi = v;
    } else {
      acc += std::exp(v - hi);
    }
  }
  if (hi == kNegInf) return kNegInf;
  return log_choose(depth, alt) + hi + std::log(acc);
}

double LocalFdrModel::null_log_likelihood(Count depth, Count alt) const {
  check_counts(depth, alt);
  if (!null_table_.empty() && depth < kTableDepth && alt < kTableAlt)
    return null_table_[static_cast<std::size_t>(depth) * kTableAlt + alt];
  return direct_null(depth, alt);
}

double LocalFdrModel::alt_log_likelihood(Count depth, Count alt) const {
  check_counts(depth, alt);
  if (!alt_table_.empty() && depth < kTableDepth && alt < kTableAlt)
    return alt_table_[static_cast<std::size_t>(depth) * kTableAlt + alt];
  return direct_alt(depth, alt);
}

double LocalFdrModel::score(const SiteObservation& obs) const {
  const std::size_t m = static_cast<std::size_t>(design_.pools);
  if (obs.depths.size() != m || obs.alt_counts.size() != m)
    throw DomainError("observation does not match the number of pools");
  double log_null = std::log(hyper_.pi0);
  double log_alt = std::log(hyper_.pi1);
  for (std::size_t j = 0; j < m; ++j) {
    if (obs.depths[j] == 0) {
      check_counts(0, obs.alt_counts[j]);
      continue;
    }
    log_null += null_log_likelihood(obs.depths[j], obs.alt_counts[j]);
    log_alt += alt_log_likelihood(obs.depths[j], obs.alt_counts[j]);
  }
  const double fdr = posterior_share(log_null, log_alt);
  // data impossible under both branches: fall back to the prior
  return std::isnan(fdr) ? hyper_.pi0 : fdr;
}

double null_log_likelihood(Count depth, Count alt, const PoolDesign& design) {
  check_counts(depth, alt);
  design.validate();
  return log_binomial_pmf(alt, depth, std::log(design.null_alt_rate()),
                          std::log1p(-design.null_alt_rate()));
}

double alt_marginal_log_likelihood(Count depth, Count alt, const PoolDesign& design,
                                   double a) {
  check_counts(depth, alt);
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("prior bound a must lie in (0, 1]");
  return LocalFdrModel(design, Hyperparameters::from_pi1(0.5, a)).alt_log_likelihood(depth, alt);
}

double site_local_fdr(const SiteObservation& obs, const PoolDesign& design,
                      const Hyperparameters& hyper) {
  return LocalFdrModel(design, hyper).score(obs);
}

LocalFdrVector batch_local_fdr(const SiteCountMatrix& data, const PoolDesign& design,
                               const Hyperparameters& hyper, int threads) {
  if (data.pools() != design.pools)
    throw DomainError("count matrix has " + std::to_string(data.pools()) +
                      " pools but the design has " + std::to_string(design.pools));
  // Exceptions cannot cross the parallel region, so validate up front.
  for (std::size_t i = 0; i < data.sites(); ++i) {
    const auto obs = data.site(i);
    for (std::size_t j = 0; j < obs.depths.size(); ++j) {
      if (obs.depths[j] < 0 || obs.alt_counts[j] < 0 || obs.alt_counts[j] > obs.depths[j])
        throw DomainError("site " + data.site_id(i) + ": need 0 <= alt_count <= depth");
    }
  }
  const LocalFdrModel model(design, hyper, /*tabulate=*/true);
  LocalFdrVector scores(data.sites());
  parallel_for(data.sites(), threads,
               [&](std::size_t i) { scores[i] = model.score(data.site(i)); });
  return scores;
}

}  // namespace ebvariant
