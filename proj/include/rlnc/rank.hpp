#pragma once

#include <cstdint>
#include <vector>

/// Rank statistics of uniformly random (and systematic-prefixed random)
/// matrices over F_q. q only enters numerically, so any integer q >= 2 is
/// accepted here, not just the orders the simulator supports.
namespace rlnc::rank {

struct RankQuery
{
  std::uint64_t q = 2;
  int K = 1;
  int m = 0;
  int omega_prime = 0;
};

/// P_r(m) for r = 0..min(m, K).
struct RankDistribution
{
  std::vector<double> probabilities;

  double operator[](std::size_t r) const { return r < probabilities.size() ? probabilities[r] : 0.0; }
  std::size_t size() const noexcept { return probabilities.size(); }
};

/// Probability that a uniformly random m x K matrix over F_q has rank K:
/// prod_{i=0}^{K-1} (1 - q^(i-m)) for m >= K, else 0.
double full_rank_prob(std::uint64_t q, int K, int m);

/// 1 - full_rank_prob, evaluated without cancellation when the matrix is
/// almost surely full rank.
double full_rank_deficit(std::uint64_t q, int K, int m);

/// Distribution of the rank of a uniformly random m x K matrix over F_q,
/// from the Gaussian-binomial count of rank-r matrices.
RankDistribution rank_distribution(const RankQuery& query);
RankDistribution rank_distribution(std::uint64_t q, int K, int m);

/// Probability that a uniform row is innovative for a rank K-1 matrix: 1 - 1/q.
double innovation_prob(std::uint64_t q);

/// Probability that m rows drawn uniformly without replacement from
/// [I_K; C], with C a uniformly random omega_prime x K matrix, have rank K.
/// Requires K <= m <= K + omega_prime.
double systematic_full_rank_prob(std::uint64_t q, int K, int m, int omega_prime);

/// 1 - systematic_full_rank_prob, without cancellation.
double systematic_full_rank_deficit(std::uint64_t q, int K, int m, int omega_prime);

}  // namespace rlnc::rank
