#include "oracles.hpp"
#include "rlnc/numeric.hpp"
#include "rlnc/rank.hpp"

#include <doctest.h>

#include <cmath>

using namespace rlnc;
using rank::full_rank_prob;
using rank::rank_distribution;
using rank::systematic_full_rank_prob;

TEST_SUITE("rank") {

TEST_CASE("spec examples")
{
  CHECK(full_rank_prob(2, 1, 1) == 0.5);
  CHECK(full_rank_prob(2, 2, 1) == 0.0);
  CHECK(full_rank_prob(2, 2, 2) == doctest::Approx(0.375).epsilon(1e-15));

  const auto d1 = rank_distribution(2, 2, 1);
  CHECK(d1[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(d1[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(rank_distribution(2, 2, 2)[1] == doctest::Approx(9.0 / 16).epsilon(1e-15));
  CHECK(rank_distribution(2, 2, 2)[1] * 0.5 + full_rank_prob(2, 2, 2) ==
        doctest::Approx(full_rank_prob(2, 2, 3)).epsilon(1e-15));
  CHECK(full_rank_prob(2, 2, 3) == doctest::Approx(0.65625).epsilon(1e-15));

  CHECK(rank::innovation_prob(2) == 0.5);
  CHECK(rank::innovation_prob(4) == 0.75);

  CHECK(systematic_full_rank_prob(7, 5, 5, 0) == 1.0);
  CHECK(systematic_full_rank_prob(2, 2, 2, 1) == doctest::Approx(2.0 / 3).epsilon(1e-14));
}

TEST_CASE("P(K) = P_{K-1}(K-1) p_K")
{
  for (std::uint64_t q : {2u, 4u, 16u})
    for (int K = 1; K <= 10; ++K)
      CHECK(full_rank_prob(q, K, K) ==
            doctest::Approx(rank_distribution(q, K, K - 1)[K - 1] * rank::innovation_prob(q)).epsilon(1e-13));
}

TEST_CASE("exhaustive enumeration of binary matrices")
{
  for (int K = 1; K <= 3; ++K)
    for (int m = 0; m <= 4; ++m) {
      const auto counts = oracle::binary_rank_counts(K, m);
      const double total = std::ldexp(1.0, m * K);
      const auto d = rank_distribution(2, K, m);
      REQUIRE(d.size() == counts.size());
      for (std::size_t r = 0; r < counts.size(); ++r) {
        const double scaled = d[r] * total;
        CHECK(std::llround(scaled) == static_cast<long long>(counts[r]));
        CHECK(std::abs(scaled - static_cast<double>(counts[r])) < 1e-9);
      }
    }
}

TEST_CASE("systematic full rank against enumeration")
{
  for (int K = 1; K <= 3; ++K)
    for (int w = 0; w <= 2; ++w)
      for (int m = K; m <= K + w; ++m)
        CHECK(systematic_full_rank_prob(2, K, m, w) ==
              doctest::Approx(oracle::binary_systematic_full_rank(K, m, w)).epsilon(1e-13));
  CHECK_THROWS_AS(systematic_full_rank_prob(2, 3, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(systematic_full_rank_prob(2, 3, 5, 1), std::invalid_argument);
}

TEST_CASE("distributions sum to one")
{
  for (std::uint64_t q : {2u, 3u, 4u, 16u, 256u})
    for (int K = 1; K <= 40; K += 3)
      for (int m = 0; m <= K + 30; m += 2) {
        KahanSum s;
        for (double p : rank_distribution(q, K, m).probabilities)
          s += p;
        REQUIRE(s.value() == doctest::Approx(1.0).epsilon(1e-12));
      }
}

TEST_CASE("full-rank recursion P(m+1) = P_{K-1}(m) p_K + P(m)")
{
  for (std::uint64_t q : {2u, 4u, 16u})
    for (int K = 1; K <= 12; ++K)
      for (int m = 0; m <= K + 20; ++m) {
        const double lhs = full_rank_prob(q, K, m + 1);
        const double rhs = rank_distribution(q, K, m)[K - 1] * rank::innovation_prob(q) + full_rank_prob(q, K, m);
        REQUIRE(std::abs(lhs - rhs) < 1e-12);
      }
}

TEST_CASE("every rank level follows the one-row recursion")
{
  for (std::uint64_t q : {2u, 4u, 16u})
    for (int K = 1; K <= 12; ++K)
      for (int m = 0; m <= K + 10; ++m) {
        const auto now = rank_distribution(q, K, m);
        const auto next = rank_distribution(q, K, m + 1);
        const double Q = static_cast<double>(q);
        for (int r = 0; r <= std::min(m + 1, K); ++r) {
          const double stay = now[r] * std::pow(Q, r - K);
          const double climb = r > 0 ? now[r - 1] * (1.0 - std::pow(Q, r - 1 - K)) : 0.0;
          REQUIRE(std::abs(next[r] - stay - climb) < 1e-12);
        }
      }
}

TEST_CASE("Chu-Vandermonde in integers")
{
  for (std::uint64_t K = 1; K <= 12; ++K)
    for (std::uint64_t w = 0; w <= 12; ++w)
      for (std::uint64_t m = K; m <= K + w; ++m) {
        std::uint64_t sum = 0;
        const std::uint64_t h_min = m > w ? m - w : 0;
        for (std::uint64_t h = h_min; h <= std::min(K, m); ++h)
          sum += binomial_exact(K, h) * binomial_exact(w, m - h);
        REQUIRE(sum == binomial_exact(K + w, m));
      }
}

TEST_CASE("systematic beats non-systematic and grows with m")
{
  for (std::uint64_t q : {2u, 4u, 16u})
    for (int K = 1; K <= 12; ++K)
      for (int w = 0; w <= 12; ++w)
        for (int m = K; m <= K + w; ++m) {
          // compare deficits so the inequality is visible even when both
          // probabilities round to 1
          REQUIRE(rank::systematic_full_rank_deficit(q, K, m, w) < rank::full_rank_deficit(q, K, m));
          REQUIRE(systematic_full_rank_prob(q, K, m, w) >= full_rank_prob(q, K, m) - 1e-15);
          if (m > K)
            REQUIRE(systematic_full_rank_prob(q, K, m, w) >= systematic_full_rank_prob(q, K, m - 1, w) - 1e-15);
        }
}

TEST_CASE("deficits agree with complements where both are accurate")
{
  for (std::uint64_t q : {2u, 4u, 16u})
    for (int K = 1; K <= 20; ++K)
      for (int m = K; m <= K + 5; ++m)
        CHECK(rank::full_rank_deficit(q, K, m) == doctest::Approx(1.0 - full_rank_prob(q, K, m)).epsilon(1e-9));
  // large m: P is 1 to double precision but the deficit is still resolved
  CHECK(rank::full_rank_deficit(2, 10, 80) == doctest::Approx(std::ldexp(1023.0, -80)).epsilon(1e-6));
}

}
