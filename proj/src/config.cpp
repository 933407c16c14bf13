#include "rlnc/config.hpp"

#include <cmath>

namespace rlnc {

std::string_view to_string(Scheme s) noexcept
{
  return s == Scheme::Systematic ? "sys" : "nonsys";
}

Scheme parse_scheme(std::string_view text)
{
  if (text == "nonsys" || text == "non-systematic" || text == "nonsystematic")
    return Scheme::NonSystematic;
  if (text == "sys" || text == "systematic")
    return Scheme::Systematic;
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "' (expected nonsys or sys)");
}

void CodeConfig::validate() const
{
  if (K < 1)
    throw std::invalid_argument("K must be >= 1, got " + std::to_string(K));
  if (Omega < 0)
    throw std::invalid_argument("Omega must be >= 0, got " + std::to_string(Omega));
  if (q < 2)
    throw std::invalid_argument("q must be >= 2, got " + std::to_string(q));
  if (L < 1)
    throw std::invalid_argument("L must be >= 1, got " + std::to_string(L));
}

void ChannelSpec::validate() const
{
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("erasure probability must lie in [0, 1], got " + std::to_string(epsilon));
}

}  // namespace rlnc
