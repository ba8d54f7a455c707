#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ebvariant/model.hpp"

namespace ebvariant {

struct SimulationSpec {
  std::size_t p = 0;
  PoolDesign design{5, 20, 0.01};
  double pi1 = 0.01;
  double a = 0.02;
  double coverage_mean = 30.0;
  // Gamma shape of the coverage distribution; scale = mean / shape.
  double coverage_shape = 3.0;
  std::uint64_t seed = 1;
  std::size_t replications = 1;

  void validate() const;
};

// Latent variables of the generative model. theta and n_alt are p x M,
// row-major.
struct LatentTruth {
  int pools = 1;
  std::vector<std::uint8_t> mu;
  std::vector<double> theta;
  std::vector<Count> n_alt;

  std::size_t sites() const { return mu.size(); }
  std::size_t nonnulls() const;
};

struct SimulatedData {
  SiteCountMatrix counts;
  LatentTruth truth;
};

// Seed of the random stream for one site of one replication. Streams are
// keyed by position, so output does not depend on the thread count.
std::uint64_t site_stream_seed(std::uint64_t seed, std::size_t replication,
                               std::size_t site);

// Draws one dataset. Replication r uses its own family of site streams.
SimulatedData simulate(const SimulationSpec& spec, std::size_t replication = 0,
                       int threads = 1);

}  // namespace ebvariant
