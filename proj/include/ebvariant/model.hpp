#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ebvariant {

using Count = std::int32_t;

// M pools of N haploids each, sequenced with per-base error rate eps. An
// erroneous base shows one specific alternative allele with probability eps/3.
struct PoolDesign {
  int pools = 1;
  int haploids = 1;
  double error_rate = 0.0;

  void validate() const;

  double null_alt_rate() const { return error_rate / 3.0; }
  // 1 - 4 eps / 3, the slope of the read-level alternative rate in n / N.
  double signal_scale() const { return 1.0 - 4.0 * error_rate / 3.0; }
  // Probability that a read shows the alternative allele when `carriers` of
  // the N haploids in the pool carry it.
  double read_alt_rate(int carriers) const;
};

// One site across all pools. Views into storage owned elsewhere.
struct SiteObservation {
  std::span<const Count> depths;
  std::span<const Count> alt_counts;
};

// Depths K_ij and alternative counts X_ij for p sites by M pools, row-major.
class SiteCountMatrix {
 public:
  explicit SiteCountMatrix(int pools);
  // Builds from row-major p x M storage; validates like add_site.
  static SiteCountMatrix from_rows(int pools, std::vector<std::string> ids,
                                   std::vector<Count> depths, std::vector<Count> alt_counts);

  void reserve(std::size_t sites);
  // Appends a site; throws DomainError on length mismatch or X > K.
  void add_site(std::string id, std::span<const Count> depths,
                std::span<const Count> alt_counts);

  std::size_t sites() const { return ids_.size(); }
  int pools() const { return pools_; }
  std::size_t pairs() const { return depths_.size(); }

  SiteObservation site(std::size_t i) const;
  const std::string& site_id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& site_ids() const { return ids_; }

  Count depth(std::size_t site, int pool) const { return depths_[site * pools_ + pool]; }
  Count alt_count(std::size_t site, int pool) const { return alts_[site * pools_ + pool]; }
  std::span<const Count> depths() const { return depths_; }
  std::span<const Count> alt_counts() const { return alts_; }

  friend bool operator==(const SiteCountMatrix&, const SiteCountMatrix&) = default;

 private:
  int pools_;
  std::vector<std::string> ids_;
  std::vector<Count> depths_;
  std::vector<Count> alts_;
};

// Prior mass pi0 on "no variant", pi1 on "variant" with theta ~ U(0, a).
struct Hyperparameters {
  double pi0 = 1.0;
  double pi1 = 0.0;
  double a = 1.0;

  static Hyperparameters from_pi1(double pi1, double a) { return {1.0 - pi1, pi1, a}; }
  void validate() const;
};

// Per-site posterior null probabilities, aligned with SiteCountMatrix rows.
using LocalFdrVector = std::vector<double>;

// log Binomial(K, eps/3) mass at X.
double null_log_likelihood(Count depth, Count alt, const PoolDesign& design);

// log of (1/a) int_0^a sum_n Binom(X; K, p_n) Binom(n; N, theta) dtheta.
double alt_marginal_log_likelihood(Count depth, Count alt, const PoolDesign& design,
                                   double a);

// Precomputed per-(design, hyperparameter) state for repeated evaluation of
// the two pool likelihoods and the multi-pool local fdr. With `tabulate`, the
// likelihoods of small (K, X) pairs are cached; cached and direct values are
// produced by the same code and are bitwise identical.
class LocalFdrModel {
 public:
  LocalFdrModel(const PoolDesign& design, const Hyperparameters& hyper,
                bool tabulate = false);

  double null_log_likelihood(Count depth, Count alt) const;
  double alt_log_likelihood(Count depth, Count alt) const;

  // pi0 prod f0 / (pi0 prod f0 + pi1 prod f1), in log space. Pools with K = 0
  // contribute nothing to either branch.
  double score(const SiteObservation& obs) const;

  const PoolDesign& design() const { return design_; }
  const Hyperparameters& hyper() const { return hyper_; }

 private:
  double direct_null(Count depth, Count alt) const;
  double direct_alt(Count depth, Count alt) const;

  static constexpr Count kTableDepth = 512;
  static constexpr Count kTableAlt = 32;

  PoolDesign design_;
  Hyperparameters hyper_;
  double log_null_p_ = 0.0;
  double log_null_q_ = 0.0;
  std::vector<double> log_weight_;  // log (1/a) int_0^a Binom(n; N, theta)
  std::vector<double> log_p_;       // log p_n
  std::vector<double> log_q_;       // log (1 - p_n)
  std::vector<double> null_table_;
  std::vector<double> alt_table_;
};

double site_local_fdr(const SiteObservation& obs, const PoolDesign& design,
                      const Hyperparameters& hyper);

// site_local_fdr over every row. Identical output for every thread count.
LocalFdrVector batch_local_fdr(const SiteCountMatrix& data, const PoolDesign& design,
                               const Hyperparameters& hyper, int threads = 1);

}  // namespace ebvariant
