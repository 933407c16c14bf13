#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace rlnc {

class RandomStream;

/// An element of GF(2^n). The value is the coefficient bitmask of a
/// polynomial in x of degree < n.
struct FieldElement
{
  std::uint8_t value = 0;

  friend bool operator==(FieldElement, FieldElement) = default;
};

/// GF(2^n) for 1 <= n <= 8 with a fixed reduction polynomial.
///
/// Default polynomials (bit i is the coefficient of x^i):
///   n=1 x+1 (0x3)        n=2 x^2+x+1 (0x7)      n=3 x^3+x+1 (0xB)
///   n=4 x^4+x+1 (0x13)   n=5 x^5+x^2+1 (0x25)   n=6 x^6+x+1 (0x43)
///   n=7 x^7+x^3+1 (0x89) n=8 x^8+x^4+x^3+x+1 (0x11B, the AES polynomial)
///
/// Instances are immutable after construction.
class FieldSpec
{
public:
  /// Field of order q; q must be a power of two in [2, 256].
  static FieldSpec of_order(std::uint64_t q);

  /// Field of degree n with the default polynomial.
  explicit FieldSpec(unsigned degree);

  /// Field of degree n with a caller-supplied polynomial. Throws
  /// std::invalid_argument if the polynomial is not irreducible of degree n.
  FieldSpec(unsigned degree, unsigned reduction_polynomial);

  unsigned order() const noexcept { return 1u << degree_; }
  unsigned degree() const noexcept { return degree_; }
  unsigned reduction_polynomial() const noexcept { return poly_; }

  /// Checked construction of an element; throws if value >= q.
  FieldElement element(unsigned value) const;

  FieldElement add(FieldElement a, FieldElement b) const noexcept { return {static_cast<std::uint8_t>(a.value ^ b.value)}; }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept;
  /// Throws std::invalid_argument for zero.
  FieldElement inv(FieldElement a) const;

  /// Bits of c * x^i for i < n. Row i is the image of the i-th basis
  /// polynomial under multiplication by c; used by bit-sliced vector kernels.
  const std::array<std::uint8_t, 8>& scaled_basis(FieldElement c) const noexcept { return basis_[c.value]; }

  /// Carry-less multiply then reduce, without tables.
  static unsigned mul_reference(unsigned a, unsigned b, unsigned degree, unsigned poly) noexcept;

  /// True if poly has degree n and no factor of degree 1..n/2 over GF(2).
  static bool is_irreducible(unsigned poly, unsigned degree) noexcept;

  static unsigned default_polynomial(unsigned degree);

private:
  void build_tables();

  unsigned degree_;
  unsigned poly_;
  std::array<std::uint8_t, 512> exp_{};
  std::array<std::int16_t, 256> log_{};
  std::array<std::array<std::uint8_t, 8>, 256> basis_{};
};

FieldElement gf_add(const FieldSpec& f, FieldElement a, FieldElement b);
FieldElement gf_mul(const FieldSpec& f, FieldElement a, FieldElement b);
FieldElement gf_inv(const FieldSpec& f, FieldElement a);

/// len i.i.d. uniform elements, zero included. Each element consumes
/// n bits of the stream.
std::vector<FieldElement> sample_uniform_vector(const FieldSpec& field, std::size_t len, RandomStream& rng);

}  // namespace rlnc
