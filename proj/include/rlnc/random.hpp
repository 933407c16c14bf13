#pragma once

#include <array>
#include <cstdint>

namespace rlnc {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32
{
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter ctr, Key key) noexcept;
};

/// A reproducible random stream.
///
/// The stream is fully determined by (seed, stream, substream). Block b of
/// the stream is Philox4x32-10 evaluated at
///
///   key     = { seed & 0xffffffff, seed >> 32 }
///   counter = { b, substream, stream & 0xffffffff, stream >> 32 }
///
/// and yields four 32-bit words consumed in order. Simulation campaigns use
/// stream = generation index, so each generation's draws are independent of
/// how generations are distributed over worker threads.
class RandomStream
{
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream, std::uint32_t substream = 0) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 bits of resolution.
  double next_unit() noexcept;
  /// The low `bits` bits of a fresh 32-bit word, 1 <= bits <= 32.
  std::uint32_t next_bits(unsigned bits) noexcept;

  /// Jump to the start of block b; the next word drawn is word 0 of that block.
  void seek(std::uint32_t block) noexcept;
  std::uint32_t block() const noexcept { return block_; }

private:
  void refill() noexcept;

  Philox4x32::Key key_;
  Philox4x32::Counter base_;
  std::uint32_t block_ = 0;
  Philox4x32::Counter buffer_{};
  unsigned used_ = 4;
};

}  // namespace rlnc
