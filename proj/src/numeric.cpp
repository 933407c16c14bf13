#include "rlnc/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace rlnc {

namespace {

// C(60, 30); past this the multiplicative recurrence is no longer exact in a double.
constexpr double kExactBinomialLimit = 118264581564861424.0;

}  // namespace

std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k)
{
  if (k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX)
      throw std::overflow_error("binomial_exact: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

double log_binomial(int n, int k)
{
  if (k < 0 || k > n)
    return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k)
{
  if (k < 0 || k > n)
    return 0.0;
  if (k > n - k)
    k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kExactBinomialLimit)
      return std::exp(log_binomial(n, k));
  }
  return r;
}

double power(double x, int e)
{
  if (e == 0)
    return 1.0;
  return std::pow(x, e);
}

double binomial_weight(int n, int k, double eps)
{
  if (k < 0 || k > n)
    return 0.0;
  if (eps <= 0.0)
    return k == n ? 1.0 : 0.0;
  if (eps >= 1.0)
    return k == 0 ? 1.0 : 0.0;

  const double erased = power(eps, n - k);
  const double delivered = power(1.0 - eps, k);
  const double c = binomial(n, k);
  if (erased > 1e-300 && delivered > 1e-300 && c < 1e300) {
    return c * erased * delivered;
  }
  const double logw = log_binomial(n, k) + (n - k) * std::log(eps) + k * std::log1p(-eps);
  return std::exp(logw);
}

}  // namespace rlnc
