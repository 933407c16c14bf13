#include "rlnc/random.hpp"

namespace rlnc {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept
{
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept
{
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream) noexcept
  : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}
  , base_{0, substream, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)}
{}

void RandomStream::refill() noexcept
{
  Philox4x32::Counter ctr = base_;
  ctr[0] = block_++;
  buffer_ = Philox4x32::generate(ctr, key_);
  used_ = 0;
}

std::uint32_t RandomStream::next_u32() noexcept
{
  if (used_ == 4)
    refill();
  return buffer_[used_++];
}

std::uint64_t RandomStream::next_u64() noexcept
{
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return lo | (hi << 32);
}

double RandomStream::next_unit() noexcept
{
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t RandomStream::next_bits(unsigned bits) noexcept
{
  const std::uint32_t w = next_u32();
  return bits >= 32 ? w : (w & ((1u << bits) - 1u));
}

void RandomStream::seek(std::uint32_t block) noexcept
{
  block_ = block;
  used_ = 4;
}

}  // namespace rlnc
