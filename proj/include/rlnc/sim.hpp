#pragma once

#include "rlnc/config.hpp"
#include "rlnc/field.hpp"
#include "rlnc/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

/// Packet-level Monte Carlo simulation of deadline-constrained RLNC
/// broadcast. Only coefficient vectors are simulated; decoding delay depends
/// on nothing but the rank of what each receiver collects.
namespace rlnc::sim {

/// Raised when the encoder is asked for a packet past the deadline N.
class DeadlineExhausted : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

/// A coefficient vector in F_q^K, q = 2^n, stored bit-sliced: plane b holds
/// bit b of every coordinate, 64 coordinates per word.
class CodingVector
{
public:
  CodingVector(unsigned degree, int length);

  static CodingVector unit(unsigned degree, int length, int index);
  static CodingVector from_elements(unsigned degree, std::span<const FieldElement> elems);

  FieldElement get(int i) const noexcept;
  void set(int i, FieldElement e) noexcept;
  std::vector<FieldElement> to_elements() const;
  bool is_zero() const noexcept;

  unsigned degree() const noexcept { return degree_; }
  int length() const noexcept { return length_; }
  int words() const noexcept { return words_; }
  std::uint64_t* plane(unsigned b) noexcept { return data_.data() + static_cast<std::size_t>(b) * words_; }
  const std::uint64_t* plane(unsigned b) const noexcept { return data_.data() + static_cast<std::size_t>(b) * words_; }
  std::span<std::uint64_t> raw() noexcept { return data_; }
  std::span<const std::uint64_t> raw() const noexcept { return data_; }

  /// Mask for the last word of each plane.
  std::uint64_t tail_mask() const noexcept;

  friend bool operator==(const CodingVector&, const CodingVector&) = default;

private:
  unsigned degree_;
  int length_;
  int words_;
  std::vector<std::uint64_t> data_;
};

/// Transmitter side of one generation. The systematic scheme emits the unit
/// vectors e_1..e_K first; every other packet carries a uniformly random
/// coefficient vector (the zero vector included).
class Encoder
{
public:
  Encoder(const CodeConfig& cfg, const FieldSpec& field);

  /// Packets emitted so far; the next packet belongs to step() + 1.
  int step() const noexcept { return step_; }

  /// Coefficient vector of the next packet. The stream is positioned from the
  /// step number, so step j's vector depends only on the stream identity and j.
  /// Throws DeadlineExhausted past step N.
  CodingVector next_coding_vector(RandomStream& rng);

  /// Advance one step without materialising the packet.
  void skip();

  /// 128-bit stream blocks consumed by one random vector.
  std::uint32_t blocks_per_vector() const noexcept { return blocks_per_vector_; }

private:
  CodeConfig cfg_;
  unsigned degree_;
  int step_ = 0;
  std::uint32_t blocks_per_vector_;
};

/// Incremental Gaussian elimination over the received coefficient vectors.
class ReceiverState
{
public:
  /// With verify set, every ingest also recomputes the rank of the full
  /// received matrix by batch elimination and throws std::logic_error on
  /// disagreement.
  ReceiverState(const FieldSpec& field, int K, bool verify = false);

  /// Adds a received row. Returns true if it raised the rank. `step` is
  /// recorded as the decoding time when the rank reaches K.
  bool ingest(const CodingVector& v, int step = 0);

  int rank() const noexcept { return rank_; }
  int received_count() const noexcept { return received_; }
  bool decoded() const noexcept { return rank_ == K_; }
  std::optional<int> done_at() const noexcept { return done_at_; }

private:
  void scale_into(std::uint64_t* dst, const std::uint64_t* src, FieldElement c) const noexcept;
  void add_scaled(std::uint64_t* dst, const std::uint64_t* src, FieldElement c, int from_word) const noexcept;
  int leading_column(const std::uint64_t* v, int from_word) const noexcept;
  FieldElement coefficient(const std::uint64_t* v, int col) const noexcept;

  const FieldSpec* field_;
  int K_;
  unsigned degree_;
  int words_;
  std::size_t stride_;
  std::vector<std::uint64_t> pivots_;
  std::vector<char> has_pivot_;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint64_t> scaled_;
  int rank_ = 0;
  int received_ = 0;
  std::optional<int> done_at_;
  bool verify_;
  std::vector<std::vector<FieldElement>> history_;
};

/// Rank of a matrix given as rows of field elements, by plain elimination.
int batch_rank(const FieldSpec& field, std::vector<std::vector<FieldElement>> rows);

struct SimOptions
{
  unsigned threads = 1;
  bool verify_rank = false;
};

/// Outcome of one generation at one receiver: the decoding step n, or empty
/// on outage.
using GenerationOutcome = std::optional<int>;

/// Simulates one generation to several receivers. Random streams, all keyed
/// by master_seed and with stream index = generation:
///   substream 0      coding vectors, block (j-1)*blocks_per_vector for step j
///   substream r + 1  erasures of receiver r, block j-1 for step j
/// A receiver stops listening once it reaches rank K.
std::vector<GenerationOutcome> run_generation(const CodeConfig& cfg, std::span<const ChannelSpec> receivers,
                                              const FieldSpec& field, std::uint64_t master_seed,
                                              std::uint64_t generation, const SimOptions& options = {});

GenerationOutcome run_generation(const CodeConfig& cfg, const ChannelSpec& ch, const FieldSpec& field,
                                 std::uint64_t master_seed, std::uint64_t generation,
                                 const SimOptions& options = {});

struct SimCampaignResult
{
  std::uint64_t generations = 0;
  std::uint64_t master_seed = 0;
  int K = 0;
  int N = 0;
  /// Generations decoded with overhead omega, omega = 0..Omega.
  std::vector<std::uint64_t> histogram;
  std::uint64_t outage_count = 0;
  std::vector<double> empirical_pmf;
  double empirical_outage = 0.0;
  /// Mean of min(n, N).
  double empirical_avg_transmissions = 0.0;
  double empirical_avg_overhead = 0.0;
  /// Standard error of empirical_avg_transmissions.
  double std_error = 0.0;
};

SimCampaignResult run_campaign(const CodeConfig& cfg, const ChannelSpec& ch, const FieldSpec& field,
                               std::uint64_t generations, std::uint64_t master_seed,
                               const SimOptions& options = {});

struct MultiReceiverResult
{
  std::vector<SimCampaignResult> receivers;
  /// Per generation: max over receivers of min(n_r, N); outage if any
  /// receiver is in outage.
  SimCampaignResult system;
};

MultiReceiverResult run_multi_receiver(const CodeConfig& cfg, std::span<const ChannelSpec> receivers,
                                       const FieldSpec& field, std::uint64_t generations,
                                       std::uint64_t master_seed, const SimOptions& options = {});

}  // namespace rlnc::sim
