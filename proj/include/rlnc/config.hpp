#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rlnc {

enum class Scheme
{
  NonSystematic,
  Systematic,
};

/// "nonsys" / "sys".
std::string_view to_string(Scheme s) noexcept;
/// Accepts "nonsys", "non-systematic", "nonsystematic", "sys", "systematic".
Scheme parse_scheme(std::string_view text);

/// Generation size K, permissible overhead Omega (deadline N = K + Omega),
/// field order q and coding scheme.
struct CodeConfig
{
  int K = 1;
  int Omega = 0;
  std::uint64_t q = 2;
  Scheme scheme = Scheme::NonSystematic;
  /// Symbols per packet. Carried for reporting only; payloads are never
  /// materialised.
  int L = 1;

  int N() const noexcept { return K + Omega; }
  /// Throws std::invalid_argument.
  void validate() const;
};

/// I.i.d. packet erasure channel.
struct ChannelSpec
{
  double epsilon = 0.0;

  void validate() const;
};

/// Raised when an unconstrained delay quantity diverges (epsilon = 1).
class UnboundedDelayError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

}  // namespace rlnc
