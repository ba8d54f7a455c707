#include "ebvariant/simulator.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ebvariant/errors.hpp"
#include "ebvariant/parallel.hpp"

namespace ebvariant {

void SimulationSpec::validate() const {
  design.validate();
  if (p == 0) throw DomainError("simulation: need at least one site");
  if (!(pi1 >= 0.0 && pi1 < 1.0)) throw DomainError("simulation: pi1 must lie in [0, 1)");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("simulation: a must lie in (0, 1]");
  if (!(coverage_mean > 0.0)) throw DomainError("simulation: coverage mean must be positive");
  if (!(coverage_shape > 0.0)) throw DomainError("simulation: coverage shape must be positive");
  if (replications == 0) throw DomainError("simulation: need at least one replication");
}

std::size_t LatentTruth::nonnulls() const {
  std::size_t n = 0;
  for (auto m : mu) n += m;
  return n;
}

namespace {

// splitmix64 finalizer, used as a hash for stream keys
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Count draw_binomial(std::mt19937_64& rng, Count trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  return std::binomial_distribution<Count>(trials, p)(rng);
}

}  // namespace

std::uint64_t site_stream_seed(std::uint64_t seed, std::size_t replication,
                               std::size_t site) {
  return mix64(mix64(mix64(seed) + replication) + site);
}

SimulatedData simulate(const SimulationSpec& spec, std::size_t replication, int threads) {
  spec.validate();
  const std::size_t p = spec.p;
  const int m = spec.design.pools;
  const int n_hap = spec.design.haploids;
  const double scale = spec.coverage_mean / spec.coverage_shape;
  constexpr double kMaxDepth = std::numeric_limits<Count>::max();

  std::vector<std::string> ids(p);
  std::vector<Count> depths(p * m);
  std::vector<Count> alts(p * m);
  LatentTruth truth;
  truth.pools = m;
  truth.mu.assign(p, 0);
  truth.theta.assign(p * m, 0.0);
  truth.n_alt.assign(p * m, 0);

  parallel_for(p, threads, [&](std::size_t i) {
    std::mt19937_64 rng(site_stream_seed(spec.seed, replication, i));
    std::bernoulli_distribution variant(spec.pi1);
    std::uniform_real_distribution<double> maf(0.0, spec.a);
    std::gamma_distribution<double> coverage(spec.coverage_shape, scale);

    const bool mu = variant(rng);
    truth.mu[i] = mu ? 1 : 0;
    for (int j = 0; j < m; ++j) {
      const std::size_t idx = i * m + j;
      int carriers = 0;
      if (mu) {
        double theta = 0.0;
        while (theta == 0.0) theta = maf(rng);
        truth.theta[idx] = theta;
        carriers = draw_binomial(rng, n_hap, theta);
        truth.n_alt[idx] = carriers;
      }
      const double k = std::max(1.0, std::min(kMaxDepth, std::round(coverage(rng))));
      depths[idx] = static_cast<Count>(k);
      alts[idx] = draw_binomial(rng, depths[idx], spec.design.read_alt_rate(carriers));
    }
    ids[i] = "site" + std::to_string(i + 1);
  });

  return {SiteCountMatrix::from_rows(m, std::move(ids), std::move(depths), std::move(alts)),
          std::move(truth)};
}

}  // namespace ebvariant
