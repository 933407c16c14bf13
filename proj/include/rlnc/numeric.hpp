#pragma once

#include <cstdint>

namespace rlnc {

/// Neumaier-compensated accumulator.
class KahanSum
{
public:
  KahanSum& operator+=(double x) noexcept
  {
    const double t = sum_ + x;
    if ((sum_ < 0 ? -sum_ : sum_) >= (x < 0 ? -x : x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    return *this;
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Exact C(n, k) in 64-bit unsigned arithmetic. Throws std::overflow_error when
/// the result does not fit.
std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k);

/// C(n, k) as a double. Exact multiplicative recurrence while the result stays
/// at or below C(60, 30); log-gamma beyond that.
double binomial(int n, int k);

/// log C(n, k).
double log_binomial(int n, int k);

/// C(n, k) * eps^(n-k) * (1-eps)^k, the probability of exactly k deliveries out
/// of n transmissions. 0^0 is taken as 1, so eps = 0 and eps = 1 are exact.
double binomial_weight(int n, int k, double eps);

/// x^e with 0^0 = 1.
double power(double x, int e);

}  // namespace rlnc
