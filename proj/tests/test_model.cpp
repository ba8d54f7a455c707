#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ebvariant/errors.hpp"
#include "ebvariant/model.hpp"
#include "ebvariant/numerics.hpp"
#include "ebvariant/simulator.hpp"
#include "support/oracles.hpp"

using namespace ebvariant;

namespace {

SiteObservation view(const std::vector<Count>& k, const std::vector<Count>& x) {
  return {std::span<const Count>(k), std::span<const Count>(x)};
}

}  // namespace

TEST_CASE("null likelihood closed-form values") {
  const PoolDesign exact{1, 20, 0.0};
  const PoolDesign noisy{1, 20, 0.01};
  CHECK(null_log_likelihood(30, 0, exact) == 0.0);
  // (1 - eps/3)^30
  CHECK(std::exp(null_log_likelihood(30, 0, noisy)) ==
        doctest::Approx(std::pow(1.0 - 0.01 / 3.0, 30)).epsilon(1e-13));
  CHECK(std::exp(null_log_likelihood(30, 0, noisy)) == doctest::Approx(0.904687).epsilon(1e-6));
  // (eps/3)^10 = 1.6935e-25
  CHECK(std::exp(null_log_likelihood(10, 10, noisy)) ==
        doctest::Approx(std::pow(0.01 / 3.0, 10)).epsilon(1e-12));
  CHECK(null_log_likelihood(10, 1, exact) == kNegInf);
}

TEST_CASE("likelihoods reject invalid counts") {
  const PoolDesign d{1, 20, 0.01};
  CHECK_THROWS_AS(null_log_likelihood(5, 6, d), DomainError);
  CHECK_THROWS_AS(null_log_likelihood(-1, 0, d), DomainError);
  CHECK_THROWS_AS(null_log_likelihood(5, -1, d), DomainError);
  CHECK_THROWS_AS(alt_marginal_log_likelihood(5, 6, d, 0.1), DomainError);
  CHECK_THROWS_AS(alt_marginal_log_likelihood(5, 1, d, 0.0), DomainError);
  CHECK_THROWS_AS(alt_marginal_log_likelihood(5, 1, d, 1.5), DomainError);
  CHECK_THROWS_AS(null_log_likelihood(5, 1, PoolDesign{1, 20, 0.5}), DomainError);
}

TEST_CASE("prior carrier weights match quadrature of the beta integral") {
  // (1/a) C(N,n) int_0^a t^n (1-t)^(N-n) dt == I_a(n+1, N-n+1) / (a (N+1))
  for (int n_hap : {1, 2, 7, 20, 30}) {
    for (double a : {0.003, 0.01, 0.02, 0.1, 0.5, 1.0}) {
      for (int n = 0; n <= n_hap; ++n) {
        const double quad = oracle::prior_carrier_weight(n, n_hap, a);
        const double closed = oracle::incomplete_beta_integer(n, n_hap, a) / (a * (n_hap + 1.0));
        if (quad > 1e-250) CHECK(closed == doctest::Approx(quad).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("alternative likelihood with one haploid and a = 1 averages the two components") {
  const PoolDesign d{1, 1, 0.01};
  for (auto [k, x] : {std::pair{10, 0}, std::pair{10, 3}, std::pair{25, 25}, std::pair{1, 1}}) {
    const double expected =
        0.5 * (std::exp(oracle::null_log_likelihood(k, x, 0.01)) +
               std::exp(oracle::log_choose(k, x) + x * std::log(0.99) + (k - x) * std::log(0.01)));
    CHECK(std::exp(alt_marginal_log_likelihood(k, x, d, 1.0)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("alternative likelihood matches 64-node Gauss-Legendre") {
  const PoolDesign d{1, 20, 0.01};
  const double got = alt_marginal_log_likelihood(30, 2, d, 0.02);
  const double want = oracle::alt_log_likelihood(30, 2, 20, 0.01, 0.02);
  CHECK(std::fabs(std::expm1(got - want)) <= 1e-8);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const int n_hap = std::uniform_int_distribution<int>(1, 30)(rng);
    const int k = std::uniform_int_distribution<int>(0, 200)(rng);
    const int x = std::uniform_int_distribution<int>(0, k)(rng);
    const double a = std::uniform_real_distribution<double>(0.001, 1.0)(rng);
    const double eps = std::uniform_real_distribution<double>(0.0, 0.05)(rng);
    const PoolDesign dd{1, n_hap, eps};
    const double g = alt_marginal_log_likelihood(k, x, dd, a);
    const double w = oracle::alt_log_likelihood(k, x, n_hap, eps, a);
    CHECK(std::fabs(std::expm1(g - w)) <= 1e-8);
  }
}

TEST_CASE("all-reference pool favours the null") {
  const PoolDesign d{1, 20, 0.01};
  CHECK(alt_marginal_log_likelihood(30, 0, d, 0.02) < null_log_likelihood(30, 0, d));
}

TEST_CASE("both likelihoods normalize over X") {
  for (double eps : {0.0, 0.01, 0.1}) {
    const PoolDesign d{1, 1, eps};
    for (int k = 0; k <= 100; ++k) {
      double s = 0.0;
      for (int x = 0; x <= k; ++x) s += std::exp(null_log_likelihood(k, x, d));
      CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  for (int n_hap : {1, 2, 20, 30}) {
    for (double a : {0.01, 0.2, 1.0}) {
      const LocalFdrModel model(PoolDesign{1, n_hap, 0.01}, Hyperparameters::from_pi1(0.5, a));
      for (int k : {0, 1, 2, 7, 30, 64, 100}) {
        double s = 0.0;
        for (int x = 0; x <= k; ++x) s += std::exp(model.alt_log_likelihood(k, x));
        CHECK(std::fabs(s - 1.0) <= 1e-8);
      }
    }
  }
}

TEST_CASE("degenerate priors give degenerate scores") {
  const PoolDesign d{3, 20, 0.01};
  const std::vector<Count> k{30, 12, 40}, x{0, 5, 40};
  CHECK(site_local_fdr(view(k, x), d, Hyperparameters::from_pi1(0.0, 0.02)) == 1.0);
  CHECK(site_local_fdr(view(k, x), d, Hyperparameters{0.0, 1.0, 0.02}) == 0.0);
}

TEST_CASE("multi-pool local fdr matches the quadrature pipeline") {
  const PoolDesign d{5, 20, 0.01};
  const auto h = Hyperparameters::from_pi1(0.01, 0.02);
  const std::vector<Count> k(5, 30), x(5, 0);
  const double got = site_local_fdr(view(k, x), d, h);
  const double want = oracle::local_fdr({30, 30, 30, 30, 30}, {0, 0, 0, 0, 0}, 20, 0.01, 0.01, 0.02);
  CHECK(got == doctest::Approx(want).epsilon(1e-8));

  const std::vector<Count> k2{25, 31, 0, 18, 40}, x2{3, 0, 0, 1, 2};
  CHECK(site_local_fdr(view(k2, x2), d, h) ==
        doctest::Approx(oracle::local_fdr({25, 31, 0, 18, 40}, {3, 0, 0, 1, 2}, 20, 0.01, 0.01, 0.02))
            .epsilon(1e-8));
}

TEST_CASE("empty pools are uninformative") {
  const auto h = Hyperparameters::from_pi1(0.01, 0.02);
  const std::vector<Count> k{30, 20}, x{2, 0};
  const std::vector<Count> k3{30, 0, 20}, x3{2, 0, 0};
  CHECK(site_local_fdr(view(k3, x3), PoolDesign{3, 20, 0.01}, h) ==
        site_local_fdr(view(k, x), PoolDesign{2, 20, 0.01}, h));
}

TEST_CASE("local fdr is nonincreasing in pi1") {
  const PoolDesign d{2, 20, 0.01};
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    std::vector<Count> k(2), x(2);
    for (int j = 0; j < 2; ++j) {
      k[j] = std::uniform_int_distribution<Count>(1, 60)(rng);
      x[j] = std::uniform_int_distribution<Count>(0, std::min<Count>(k[j], 5))(rng);
    }
    double prev = 1.0;
    for (double pi1 : {0.0, 0.001, 0.01, 0.1, 0.5, 0.9}) {
      const double s = site_local_fdr(view(k, x), d, Hyperparameters::from_pi1(pi1, 0.02));
      CHECK(s <= prev);
      prev = s;
    }
  }
}

TEST_CASE("adding an all-reference pool never lowers the score") {
  const auto h = Hyperparameters::from_pi1(0.01, 0.02);
  std::mt19937_64 rng(10);
  for (int t = 0; t < 50; ++t) {
    const int m = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<Count> k(m), x(m);
    for (int j = 0; j < m; ++j) {
      k[j] = std::uniform_int_distribution<Count>(1, 60)(rng);
      x[j] = std::uniform_int_distribution<Count>(0, std::min<Count>(k[j], 6))(rng);
    }
    const double before = site_local_fdr(view(k, x), PoolDesign{m, 20, 0.01}, h);
    k.push_back(30);
    x.push_back(0);
    const double after = site_local_fdr(view(k, x), PoolDesign{m + 1, 20, 0.01}, h);
    CHECK(after >= before);
  }
}

TEST_CASE("batch scores agree with per-site evaluation") {
  SimulationSpec spec;
  spec.p = 1000;
  spec.pi1 = 0.05;
  spec.seed = 42;
  const auto data = simulate(spec);
  const auto h = Hyperparameters::from_pi1(0.01, 0.02);

  const auto batch = batch_local_fdr(data.counts, spec.design, h, 1);
  REQUIRE(batch.size() == 1000);
  for (std::size_t i = 0; i < data.counts.sites(); ++i)
    CHECK(batch[i] == site_local_fdr(data.counts.site(i), spec.design, h));
  CHECK(batch_local_fdr(data.counts, spec.design, h, 4) == batch);

  // permuting rows permutes scores
  std::vector<std::size_t> perm(data.counts.sites());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
  SiteCountMatrix shuffled(spec.design.pools);
  for (auto i : perm) {
    const auto obs = data.counts.site(i);
    shuffled.add_site(data.counts.site_id(i), obs.depths, obs.alt_counts);
  }
  const auto permuted = batch_local_fdr(shuffled, spec.design, h, 2);
  for (std::size_t r = 0; r < perm.size(); ++r) CHECK(permuted[r] == batch[perm[r]]);
}

TEST_CASE("batch edge cases") {
  const PoolDesign d{2, 20, 0.01};
  SiteCountMatrix single(2);
  const std::vector<Count> k{30, 14}, x{3, 0};
  single.add_site("only", k, x);
  const auto h = Hyperparameters::from_pi1(0.01, 0.02);
  const auto v = batch_local_fdr(single, d, h);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == site_local_fdr(single.site(0), d, h));

  const auto ones = batch_local_fdr(single, d, Hyperparameters::from_pi1(0.0, 0.02));
  CHECK(ones == LocalFdrVector{1.0});

  CHECK_THROWS_AS(batch_local_fdr(single, PoolDesign{3, 20, 0.01}, h), DomainError);
}

TEST_CASE("deep coverage stays finite") {
  const PoolDesign d{1, 20, 0.01};
  const double l0 = null_log_likelihood(1000000, 3400, d);
  const double l1 = alt_marginal_log_likelihood(1000000, 3400, d, 0.02);
  CHECK(std::isfinite(l0));
  CHECK(std::isfinite(l1));
  CHECK(l0 <= 0.0);
  CHECK(l1 <= 0.0);
}

TEST_CASE("count matrix validation") {
  SiteCountMatrix m(2);
  const std::vector<Count> k{3, 4}, bad{4, 0}, short_row{3};
  CHECK_THROWS_AS(m.add_site("s", k, bad), DomainError);
  CHECK_THROWS_AS(m.add_site("s", short_row, short_row), DomainError);
  CHECK_THROWS_AS(SiteCountMatrix(0), DomainError);
  CHECK_THROWS_AS((Hyperparameters{0.5, 0.4, 0.1}.validate()), DomainError);
  CHECK_THROWS_AS((Hyperparameters{0.9, 0.1, 0.0}.validate()), DomainError);
}
