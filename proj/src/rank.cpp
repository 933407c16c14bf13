#include "rlnc/rank.hpp"

#include "rlnc/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rlnc::rank {

namespace {

void check_q(std::uint64_t q)
{
  if (q < 2)
    throw std::invalid_argument("field order q must be >= 2, got " + std::to_string(q));
}

void check_basic(std::uint64_t q, int K, int m)
{
  check_q(q);
  if (K < 1)
    throw std::invalid_argument("generation size K must be >= 1, got " + std::to_string(K));
  if (m < 0)
    throw std::invalid_argument("row count m must be >= 0, got " + std::to_string(m));
}

// q^(-e) for e >= 0.
inline double inv_power(double q, int e)
{
  return std::pow(q, -static_cast<double>(e));
}

// Product of (1 - q^-e) for e = lo..hi, split as (direct product, log of the
// tail) so that neither large nor tiny factors lose precision.
struct Product
{
  double direct = 1.0;
  double log_tail = 0.0;
};

Product product_one_minus(double q, int lo, int hi)
{
  Product p;
  KahanSum tail;
  for (int e = lo; e <= hi; ++e) {
    const double x = inv_power(q, e);
    if (x < 1e-8)
      tail += std::log1p(-x);
    else
      p.direct *= 1.0 - x;
  }
  p.log_tail = tail.value();
  return p;
}

void check_systematic(std::uint64_t q, int K, int m, int omega_prime)
{
  check_basic(q, K, m);
  if (omega_prime < 0)
    throw std::invalid_argument("coded-packet budget omega' must be >= 0");
  if (m < K || m > K + omega_prime)
    throw std::invalid_argument("systematic rank query needs K <= m <= K + omega', got m=" + std::to_string(m) +
                                ", K=" + std::to_string(K) + ", omega'=" + std::to_string(omega_prime));
}

// Hypergeometric weight C(K,h) C(w, m-h) / C(K+w, m).
double hypergeometric(int K, int omega_prime, int m, int h)
{
  return std::exp(log_binomial(K, h) + log_binomial(omega_prime, m - h) - log_binomial(K + omega_prime, m));
}

}  // namespace

double full_rank_prob(std::uint64_t q, int K, int m)
{
  check_basic(q, K, m);
  if (m < K)
    return 0.0;
  const Product p = product_one_minus(static_cast<double>(q), m - K + 1, m);
  return p.direct * std::exp(p.log_tail);
}

double full_rank_deficit(std::uint64_t q, int K, int m)
{
  check_basic(q, K, m);
  if (m < K)
    return 1.0;
  const double qd = static_cast<double>(q);
  KahanSum log_p;
  for (int e = m - K + 1; e <= m; ++e)
    log_p += std::log1p(-inv_power(qd, e));
  return -std::expm1(log_p.value());
}

RankDistribution rank_distribution(const RankQuery& query)
{
  return rank_distribution(query.q, query.K, query.m);
}

RankDistribution rank_distribution(std::uint64_t q, int K, int m)
{
  check_basic(q, K, m);
  const double qd = static_cast<double>(q);
  const double log_q = std::log(qd);
  const int max_rank = std::min(m, K);

  // #rank-r matrices / q^(mK)
  //   = q^(-(m-r)(K-r)) prod_{i<r} (1 - q^(i-m)) (1 - q^(i-K)) / (1 - q^(i-r))
  RankDistribution dist;
  dist.probabilities.resize(static_cast<std::size_t>(max_rank) + 1);
  for (int r = 0; r <= max_rank; ++r) {
    KahanSum log_p;
    log_p += -static_cast<double>(m - r) * static_cast<double>(K - r) * log_q;
    for (int i = 0; i < r; ++i) {
      log_p += std::log1p(-inv_power(qd, m - i));
      log_p += std::log1p(-inv_power(qd, K - i));
      log_p += -std::log1p(-inv_power(qd, r - i));
    }
    dist.probabilities[static_cast<std::size_t>(r)] = std::exp(log_p.value());
  }
  if (max_rank == K)
    dist.probabilities.back() = full_rank_prob(q, K, m);
  return dist;
}

double innovation_prob(std::uint64_t q)
{
  check_q(q);
  return 1.0 - 1.0 / static_cast<double>(q);
}

double systematic_full_rank_prob(std::uint64_t q, int K, int m, int omega_prime)
{
  check_systematic(q, K, m, omega_prime);
  // Near 1 the complement is the accurate quantity: the hypergeometric
  // weights themselves only sum to 1 within a few ulps.
  const double deficit = systematic_full_rank_deficit(q, K, m, omega_prime);
  if (deficit < 0.5)
    return 1.0 - deficit;
  KahanSum sum;
  for (int h = std::max(0, m - omega_prime); h <= K; ++h) {
    // K - h missing columns must be covered by m - h coded rows; the product
    // is empty (= 1) when h = K.
    const double covered = h == K ? 1.0 : full_rank_prob(q, K - h, m - h);
    sum += hypergeometric(K, omega_prime, m, h) * covered;
  }
  return std::min(1.0, sum.value());
}

double systematic_full_rank_deficit(std::uint64_t q, int K, int m, int omega_prime)
{
  check_systematic(q, K, m, omega_prime);
  KahanSum sum;
  for (int h = std::max(0, m - omega_prime); h < K; ++h)
    sum += hypergeometric(K, omega_prime, m, h) * full_rank_deficit(q, K - h, m - h);
  return std::max(0.0, sum.value());
}

}  // namespace rlnc::rank
