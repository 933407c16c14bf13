#include "rlnc/field.hpp"

#include "rlnc/random.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace rlnc {

namespace {

constexpr std::array<unsigned, 9> kDefaultPolynomials = {0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11B};

int poly_degree(unsigned p) noexcept
{
  return p == 0 ? -1 : static_cast<int>(std::bit_width(p)) - 1;
}

// Remainder of a divided by b over GF(2)[x].
unsigned poly_mod(unsigned a, unsigned b) noexcept
{
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a))
    a ^= b << (da - db);
  return a;
}

}  // namespace

unsigned FieldSpec::default_polynomial(unsigned degree)
{
  if (degree < 1 || degree > 8)
    throw std::invalid_argument("field degree must be in [1, 8], got " + std::to_string(degree));
  return kDefaultPolynomials[degree];
}

bool FieldSpec::is_irreducible(unsigned poly, unsigned degree) noexcept
{
  if (poly_degree(poly) != static_cast<int>(degree))
    return false;
  // Any reducible polynomial has a factor of degree <= n/2.
  for (unsigned d = 1; d <= degree / 2; ++d) {
    for (unsigned cand = 1u << d; cand < (2u << d); ++cand) {
      if (poly_mod(poly, cand) == 0)
        return false;
    }
  }
  return true;
}

unsigned FieldSpec::mul_reference(unsigned a, unsigned b, unsigned degree, unsigned poly) noexcept
{
  unsigned r = 0;
  for (unsigned i = 0; i < degree; ++i) {
    if (b & (1u << i))
      r ^= a << i;
  }
  return poly_mod(r, poly);
}

FieldSpec FieldSpec::of_order(std::uint64_t q)
{
  if (q < 2 || q > 256 || !std::has_single_bit(q))
    throw std::invalid_argument("field order must be a power of two in [2, 256], got " + std::to_string(q));
  return FieldSpec(static_cast<unsigned>(std::countr_zero(q)));
}

FieldSpec::FieldSpec(unsigned degree)
  : FieldSpec(degree, default_polynomial(degree))
{}

FieldSpec::FieldSpec(unsigned degree, unsigned reduction_polynomial)
  : degree_(degree)
  , poly_(reduction_polynomial)
{
  if (degree < 1 || degree > 8)
    throw std::invalid_argument("field degree must be in [1, 8], got " + std::to_string(degree));
  if (!is_irreducible(reduction_polynomial, degree))
    throw std::invalid_argument("reduction polynomial " + std::to_string(reduction_polynomial) +
                                " is not irreducible of degree " + std::to_string(degree));
  build_tables();
}

void FieldSpec::build_tables()
{
  const unsigned q = order();
  for (unsigned c = 0; c < q; ++c) {
    for (unsigned i = 0; i < degree_; ++i)
      basis_[c][i] = static_cast<std::uint8_t>(mul_reference(c, 1u << i, degree_, poly_));
  }
  if (degree_ == 1) {
    exp_[0] = exp_[1] = 1;
    log_[1] = 0;
    return;
  }
  // The default polynomials are not all primitive (0x11B is not), so search
  // for a generator of the multiplicative group.
  for (unsigned g = 2; g < q; ++g) {
    unsigned x = 1;
    unsigned period = 0;
    do {
      x = mul_reference(x, g, degree_, poly_);
      ++period;
    } while (x != 1);
    if (period != q - 1)
      continue;
    x = 1;
    for (unsigned i = 0; i < q - 1; ++i) {
      exp_[i] = exp_[i + q - 1] = static_cast<std::uint8_t>(x);
      log_[x] = static_cast<std::int16_t>(i);
      x = mul_reference(x, g, degree_, poly_);
    }
    return;
  }
  throw std::logic_error("no generator found for GF(2^n)");
}

FieldElement FieldSpec::element(unsigned value) const
{
  if (value >= order())
    throw std::out_of_range("field element " + std::to_string(value) + " out of range for GF(" + std::to_string(order()) + ")");
  return {static_cast<std::uint8_t>(value)};
}

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const noexcept
{
  if (a.value == 0 || b.value == 0)
    return {0};
  if (degree_ == 1)
    return {1};
  return {exp_[log_[a.value] + log_[b.value]]};
}

FieldElement FieldSpec::inv(FieldElement a) const
{
  if (a.value == 0)
    throw std::invalid_argument("zero has no multiplicative inverse");
  if (degree_ == 1)
    return {1};
  const unsigned q = order();
  return {exp_[(q - 1 - log_[a.value]) % (q - 1)]};
}

FieldElement gf_add(const FieldSpec& f, FieldElement a, FieldElement b) { return f.add(a, b); }
FieldElement gf_mul(const FieldSpec& f, FieldElement a, FieldElement b) { return f.mul(a, b); }
FieldElement gf_inv(const FieldSpec& f, FieldElement a) { return f.inv(a); }

std::vector<FieldElement> sample_uniform_vector(const FieldSpec& field, std::size_t len, RandomStream& rng)
{
  std::vector<FieldElement> out(len);
  for (auto& e : out)
    e.value = static_cast<std::uint8_t>(rng.next_bits(field.degree()));
  return out;
}

}  // namespace rlnc
