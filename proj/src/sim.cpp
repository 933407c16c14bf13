#include "rlnc/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <mutex>
#include <thread>

namespace rlnc::sim {

namespace {

constexpr int kWordBits = 64;

int words_for(int length)
{
  return (length + kWordBits - 1) / kWordBits;
}

void check_field(const CodeConfig& cfg, const FieldSpec& field)
{
  cfg.validate();
  if (field.order() != cfg.q)
    throw std::invalid_argument("simulation field GF(" + std::to_string(field.order()) +
                                ") does not match configured q=" + std::to_string(cfg.q));
}

}  // namespace

// ---------------------------------------------------------------------------

CodingVector::CodingVector(unsigned degree, int length)
  : degree_(degree)
  , length_(length)
  , words_(words_for(length))
  , data_(static_cast<std::size_t>(degree) * static_cast<std::size_t>(words_for(length)), 0)
{
  if (degree < 1 || degree > 8 || length < 1)
    throw std::invalid_argument("coding vector needs degree in [1, 8] and length >= 1");
}

CodingVector CodingVector::unit(unsigned degree, int length, int index)
{
  CodingVector v(degree, length);
  v.set(index, {1});
  return v;
}

CodingVector CodingVector::from_elements(unsigned degree, std::span<const FieldElement> elems)
{
  CodingVector v(degree, static_cast<int>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    v.set(static_cast<int>(i), elems[i]);
  return v;
}

FieldElement CodingVector::get(int i) const noexcept
{
  const int w = i / kWordBits;
  const int bit = i % kWordBits;
  unsigned value = 0;
  for (unsigned b = 0; b < degree_; ++b)
    value |= static_cast<unsigned>((plane(b)[w] >> bit) & 1u) << b;
  return {static_cast<std::uint8_t>(value)};
}

void CodingVector::set(int i, FieldElement e) noexcept
{
  const int w = i / kWordBits;
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  for (unsigned b = 0; b < degree_; ++b) {
    if ((e.value >> b) & 1u)
      plane(b)[w] |= mask;
    else
      plane(b)[w] &= ~mask;
  }
}

std::vector<FieldElement> CodingVector::to_elements() const
{
  std::vector<FieldElement> out(static_cast<std::size_t>(length_));
  for (int i = 0; i < length_; ++i)
    out[static_cast<std::size_t>(i)] = get(i);
  return out;
}

bool CodingVector::is_zero() const noexcept
{
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

std::uint64_t CodingVector::tail_mask() const noexcept
{
  const int rem = length_ % kWordBits;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

// ---------------------------------------------------------------------------

Encoder::Encoder(const CodeConfig& cfg, const FieldSpec& field)
  : cfg_(cfg)
  , degree_(field.degree())
{
  check_field(cfg, field);
  const std::uint32_t words = degree_ * static_cast<std::uint32_t>(words_for(cfg.K));
  blocks_per_vector_ = (words + 1) / 2;
}

CodingVector Encoder::next_coding_vector(RandomStream& rng)
{
  if (step_ >= cfg_.N())
    throw DeadlineExhausted("deadline N=" + std::to_string(cfg_.N()) + " exhausted");
  const int step = ++step_;
  if (cfg_.scheme == Scheme::Systematic && step <= cfg_.K)
    return CodingVector::unit(degree_, cfg_.K, step - 1);

  CodingVector v(degree_, cfg_.K);
  rng.seek(static_cast<std::uint32_t>(step - 1) * blocks_per_vector_);
  // Uniform over F_q^K is equivalent to every bit of every plane being a fair coin.
  const std::uint64_t tail = v.tail_mask();
  for (unsigned b = 0; b < degree_; ++b) {
    std::uint64_t* p = v.plane(b);
    for (int w = 0; w < v.words(); ++w)
      p[w] = rng.next_u64();
    p[v.words() - 1] &= tail;
  }
  return v;
}

void Encoder::skip()
{
  if (step_ >= cfg_.N())
    throw DeadlineExhausted("deadline N=" + std::to_string(cfg_.N()) + " exhausted");
  ++step_;
}

// ---------------------------------------------------------------------------

ReceiverState::ReceiverState(const FieldSpec& field, int K, bool verify)
  : field_(&field)
  , K_(K)
  , degree_(field.degree())
  , words_(words_for(K))
  , stride_(static_cast<std::size_t>(field.degree()) * static_cast<std::size_t>(words_for(K)))
  , pivots_(static_cast<std::size_t>(K) * stride_, 0)
  , has_pivot_(static_cast<std::size_t>(K), 0)
  , scratch_(stride_)
  , scaled_(stride_)
  , verify_(verify)
{
  if (K < 1)
    throw std::invalid_argument("receiver needs K >= 1");
}

FieldElement ReceiverState::coefficient(const std::uint64_t* v, int col) const noexcept
{
  const int w = col / kWordBits;
  const int bit = col % kWordBits;
  unsigned value = 0;
  for (unsigned b = 0; b < degree_; ++b)
    value |= static_cast<unsigned>((v[b * words_ + w] >> bit) & 1u) << b;
  return {static_cast<std::uint8_t>(value)};
}

int ReceiverState::leading_column(const std::uint64_t* v, int from_word) const noexcept
{
  for (int w = from_word; w < words_; ++w) {
    std::uint64_t any = 0;
    for (unsigned b = 0; b < degree_; ++b)
      any |= v[b * words_ + w];
    if (any != 0)
      return w * kWordBits + std::countr_zero(any);
  }
  return -1;
}

void ReceiverState::scale_into(std::uint64_t* dst, const std::uint64_t* src, FieldElement c) const noexcept
{
  const auto& basis = field_->scaled_basis(c);
  for (int w = 0; w < words_; ++w) {
    for (unsigned j = 0; j < degree_; ++j) {
      std::uint64_t out = 0;
      for (unsigned i = 0; i < degree_; ++i) {
        if ((basis[i] >> j) & 1u)
          out ^= src[i * words_ + w];
      }
      dst[j * words_ + w] = out;
    }
  }
}

void ReceiverState::add_scaled(std::uint64_t* dst, const std::uint64_t* src, FieldElement c, int from_word) const noexcept
{
  if (c.value == 1) {
    for (unsigned b = 0; b < degree_; ++b) {
      for (int w = from_word; w < words_; ++w)
        dst[b * words_ + w] ^= src[b * words_ + w];
    }
    return;
  }
  const auto& basis = field_->scaled_basis(c);
  for (int w = from_word; w < words_; ++w) {
    for (unsigned j = 0; j < degree_; ++j) {
      std::uint64_t out = 0;
      for (unsigned i = 0; i < degree_; ++i) {
        if ((basis[i] >> j) & 1u)
          out ^= src[i * words_ + w];
      }
      dst[j * words_ + w] ^= out;
    }
  }
}

bool ReceiverState::ingest(const CodingVector& v, int step)
{
  if (v.length() != K_ || v.degree() != degree_)
    throw std::invalid_argument("coding vector shape does not match receiver");
  ++received_;
  if (verify_)
    history_.push_back(v.to_elements());

  bool innovative = false;
  if (rank_ < K_) {
    std::copy(v.raw().begin(), v.raw().end(), scratch_.begin());
    // Pivot rows are normalised with their leading entry at the pivot column,
    // so eliminating the current leading entry only touches later columns.
    for (int col = leading_column(scratch_.data(), 0); col >= 0;
         col = leading_column(scratch_.data(), col / kWordBits)) {
      std::uint64_t* row = pivots_.data() + static_cast<std::size_t>(col) * stride_;
      const FieldElement c = coefficient(scratch_.data(), col);
      if (!has_pivot_[static_cast<std::size_t>(col)]) {
        scale_into(row, scratch_.data(), field_->inv(c));
        has_pivot_[static_cast<std::size_t>(col)] = 1;
        ++rank_;
        innovative = true;
        break;
      }
      add_scaled(scratch_.data(), row, c, col / kWordBits);
    }
    if (rank_ == K_ && innovative)
      done_at_ = step;
  }

  if (verify_) {
    const int expected = batch_rank(*field_, history_);
    if (expected != rank_)
      throw std::logic_error("incremental rank " + std::to_string(rank_) + " != batch rank " + std::to_string(expected));
  }
  return innovative;
}

int batch_rank(const FieldSpec& field, std::vector<std::vector<FieldElement>> rows)
{
  if (rows.empty())
    return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col].value == 0)
      ++pivot;
    if (pivot == rows.size())
      continue;
    std::swap(rows[rank], rows[pivot]);
    const FieldElement inv = field.inv(rows[rank][col]);
    for (auto& e : rows[rank])
      e = field.mul(e, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].value == 0)
        continue;
      const FieldElement factor = rows[r][col];
      for (std::size_t k = 0; k < cols; ++k)
        rows[r][k] = field.add(rows[r][k], field.mul(factor, rows[rank][k]));
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

// ---------------------------------------------------------------------------

std::vector<GenerationOutcome> run_generation(const CodeConfig& cfg, std::span<const ChannelSpec> receivers,
                                              const FieldSpec& field, std::uint64_t master_seed,
                                              std::uint64_t generation, const SimOptions& options)
{
  check_field(cfg, field);
  if (receivers.empty())
    throw std::invalid_argument("at least one receiver is required");
  for (const auto& ch : receivers)
    ch.validate();

  const std::size_t count = receivers.size();
  Encoder encoder(cfg, field);
  RandomStream coding(master_seed, generation, 0);
  std::vector<RandomStream> erasure;
  std::vector<ReceiverState> rx;
  erasure.reserve(count);
  rx.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    erasure.emplace_back(master_seed, generation, static_cast<std::uint32_t>(r + 1));
    rx.emplace_back(field, cfg.K, options.verify_rank);
  }

  std::vector<char> received(count);
  std::size_t pending = count;
  for (int step = 1; step <= cfg.N() && pending > 0; ++step) {
    bool needed = false;
    for (std::size_t r = 0; r < count; ++r) {
      received[r] = 0;
      if (rx[r].decoded())
        continue;
      const double eps = receivers[r].epsilon;
      bool erased;
      if (eps <= 0.0) {
        erased = false;
      } else if (eps >= 1.0) {
        erased = true;
      } else {
        erasure[r].seek(static_cast<std::uint32_t>(step - 1));
        erased = erasure[r].next_unit() < eps;
      }
      received[r] = erased ? 0 : 1;
      needed = needed || !erased;
    }
    if (!needed) {
      encoder.skip();
      continue;
    }
    const CodingVector v = encoder.next_coding_vector(coding);
    for (std::size_t r = 0; r < count; ++r) {
      if (received[r] && rx[r].ingest(v, step) && rx[r].decoded())
        --pending;
    }
  }

  std::vector<GenerationOutcome> out(count);
  for (std::size_t r = 0; r < count; ++r)
    out[r] = rx[r].done_at();
  return out;
}

GenerationOutcome run_generation(const CodeConfig& cfg, const ChannelSpec& ch, const FieldSpec& field,
                                 std::uint64_t master_seed, std::uint64_t generation, const SimOptions& options)
{
  return run_generation(cfg, std::span<const ChannelSpec>(&ch, 1), field, master_seed, generation, options).front();
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::int32_t kOutage = -1;

// Aggregates per-generation outcomes (n, or kOutage) in generation order.
SimCampaignResult summarise(const CodeConfig& cfg, std::uint64_t master_seed, std::uint64_t generations,
                            const std::vector<std::int32_t>& outcomes, std::size_t stride, std::size_t offset)
{
  SimCampaignResult res;
  res.generations = generations;
  res.master_seed = master_seed;
  res.K = cfg.K;
  res.N = cfg.N();
  res.histogram.assign(static_cast<std::size_t>(cfg.Omega) + 1, 0);

  // Integer moments keep the reduction exact.
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
  for (std::uint64_t g = 0; g < generations; ++g) {
    const std::int32_t n = outcomes[g * stride + offset];
    std::uint64_t capped;
    if (n == kOutage) {
      ++res.outage_count;
      capped = static_cast<std::uint64_t>(cfg.N());
    } else {
      ++res.histogram[static_cast<std::size_t>(n - cfg.K)];
      capped = static_cast<std::uint64_t>(n);
    }
    sum += capped;
    sum_sq += static_cast<unsigned __int128>(capped) * capped;
  }

  const double G = static_cast<double>(generations);
  res.empirical_pmf.resize(res.histogram.size());
  for (std::size_t i = 0; i < res.histogram.size(); ++i)
    res.empirical_pmf[i] = static_cast<double>(res.histogram[i]) / G;
  res.empirical_outage = static_cast<double>(res.outage_count) / G;
  res.empirical_avg_transmissions = static_cast<double>(sum) / G;
  res.empirical_avg_overhead = res.empirical_avg_transmissions - cfg.K;
  if (generations > 1) {
    // G * sum_sq - sum^2 is exact in 128 bits for any realistic campaign.
    const unsigned __int128 spread = static_cast<unsigned __int128>(generations) * sum_sq - sum * sum;
    const double variance = static_cast<double>(spread) / (G * (G - 1.0));
    res.std_error = std::sqrt(variance / G);
  }
  return res;
}

std::vector<std::int32_t> simulate_all(const CodeConfig& cfg, std::span<const ChannelSpec> receivers,
                                       const FieldSpec& field, std::uint64_t generations,
                                       std::uint64_t master_seed, const SimOptions& options)
{
  const std::size_t count = receivers.size();
  std::vector<std::int32_t> outcomes(static_cast<std::size_t>(generations) * count);

  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t g = begin; g < end; ++g) {
      const auto res = run_generation(cfg, receivers, field, master_seed, g, options);
      for (std::size_t r = 0; r < count; ++r)
        outcomes[g * count + r] = res[r] ? static_cast<std::int32_t>(*res[r]) : kOutage;
    }
  };

  const unsigned threads = static_cast<unsigned>(
    std::clamp<std::uint64_t>(options.threads == 0 ? 1 : options.threads, 1, std::max<std::uint64_t>(generations, 1)));
  if (threads == 1) {
    work(0, generations);
    return outcomes;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::uint64_t chunk = (generations + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = std::min(generations, t * chunk);
    const std::uint64_t end = std::min(generations, begin + chunk);
    pool.emplace_back([&, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool)
    th.join();
  if (failure)
    std::rethrow_exception(failure);
  return outcomes;
}

}  // namespace

SimCampaignResult run_campaign(const CodeConfig& cfg, const ChannelSpec& ch, const FieldSpec& field,
                               std::uint64_t generations, std::uint64_t master_seed, const SimOptions& options)
{
  return run_multi_receiver(cfg, std::span<const ChannelSpec>(&ch, 1), field, generations, master_seed, options)
    .receivers.front();
}

MultiReceiverResult run_multi_receiver(const CodeConfig& cfg, std::span<const ChannelSpec> receivers,
                                       const FieldSpec& field, std::uint64_t generations,
                                       std::uint64_t master_seed, const SimOptions& options)
{
  check_field(cfg, field);
  if (generations < 1)
    throw std::invalid_argument("a campaign needs at least one generation");
  if (receivers.empty())
    throw std::invalid_argument("at least one receiver is required");

  const std::size_t count = receivers.size();
  const auto outcomes = simulate_all(cfg, receivers, field, generations, master_seed, options);

  MultiReceiverResult res;
  for (std::size_t r = 0; r < count; ++r)
    res.receivers.push_back(summarise(cfg, master_seed, generations, outcomes, count, r));

  std::vector<std::int32_t> system(static_cast<std::size_t>(generations));
  for (std::uint64_t g = 0; g < generations; ++g) {
    std::int32_t worst = 0;
    for (std::size_t r = 0; r < count; ++r) {
      const std::int32_t n = outcomes[g * count + r];
      if (n == kOutage) {
        worst = kOutage;
        break;
      }
      worst = std::max(worst, n);
    }
    system[g] = worst;
  }
  res.system = summarise(cfg, master_seed, generations, system, 1, 0);
  return res;
}

}  // namespace rlnc::sim
