#include "rlnc/cli/rows.hpp"

#include "rlnc/numeric.hpp"

#include <cmath>

namespace rlnc::cli {

namespace {

using report::Cell;
using report::ResultTable;

Cell text(const std::string& s)
{
  return s.empty() ? Cell{} : Cell{s};
}

ResultTable::RowRef add_point(ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch, const char* source,
                              const std::string& label, const ReceiverTag& receiver = {})
{
  auto row = t.add_row();
  row.set("label", text(label))
    .set("scheme", std::string(to_string(cfg.scheme)))
    .set("source", std::string(source))
    .set("K", std::int64_t{cfg.K})
    .set("q", static_cast<std::int64_t>(cfg.q))
    .set("Omega", std::int64_t{cfg.Omega})
    .set("N", std::int64_t{cfg.N()})
    .set("epsilon", std::isnan(ch.epsilon) ? Cell{} : Cell{ch.epsilon})
    .set("receiver", receiver);
  return row;
}

void add_bounds(ResultTable::RowRef& row, const CodeConfig& cfg, const ChannelSpec& ch)
{
  if (ch.epsilon >= 1.0)
    return;
  const auto b = theory::decoding_delay_bounds(cfg.q, cfg.K, ch.epsilon);
  row.set("lower_bound", b.lower)
    .set("upper_bound", b.upper)
    .set("overhead_bound", theory::overhead_upper_bound(cfg.q, cfg.K, ch.epsilon));
  if (cfg.K >= 2)
    row.set("lucani_bound", theory::lucani_upper_bound(cfg.q, cfg.K, ch.epsilon));
}

}  // namespace

void add_theory_summary(ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch, const std::string& label)
{
  const auto s = theory::avg_transmissions(cfg, ch);
  auto row = add_point(t, cfg, ch, "theory", label);
  row.set("avg_transmissions", s.avg_transmissions).set("avg_overhead", s.avg_overhead).set("outage", s.outage);
  add_bounds(row, cfg, ch);
}

void add_oracle_summary(ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch, const std::string& label)
{
  const auto d = theory::markov_oracle(cfg, ch);
  KahanSum overhead;
  for (int v = 0; v < cfg.Omega; ++v)
    overhead += 1.0 - d.cdf[static_cast<std::size_t>(v)];
  auto row = add_point(t, cfg, ch, "oracle", label);
  row.set("avg_transmissions", cfg.K + overhead.value())
    .set("avg_overhead", overhead.value())
    .set("outage", d.outage);
}

void add_simulation_summary(ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch,
                            const sim::SimCampaignResult& res, const ReceiverTag& receiver, const std::string& label)
{
  auto row = add_point(t, cfg, ch, "simulation", label, receiver);
  row.set("avg_transmissions", res.empirical_avg_transmissions)
    .set("avg_overhead", res.empirical_avg_overhead)
    .set("outage", res.empirical_outage)
    .set("std_error", res.std_error)
    .set("generations", static_cast<std::int64_t>(res.generations))
    .set("seed", static_cast<std::int64_t>(res.master_seed));
}

void add_theory_distribution(ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch, const std::string& label)
{
  const auto d = theory::overhead_distribution(cfg, ch);
  for (int w = 0; w <= cfg.Omega; ++w) {
    add_point(t, cfg, ch, "theory", label)
      .set("omega", std::int64_t{w})
      .set("pmf", d.pmf[static_cast<std::size_t>(w)])
      .set("cdf", d.cdf[static_cast<std::size_t>(w)]);
  }
}

void add_oracle_distribution(ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch, const std::string& label)
{
  const auto d = theory::markov_oracle(cfg, ch);
  for (int w = 0; w <= cfg.Omega; ++w) {
    add_point(t, cfg, ch, "oracle", label)
      .set("omega", std::int64_t{w})
      .set("pmf", d.pmf[static_cast<std::size_t>(w)])
      .set("cdf", d.cdf[static_cast<std::size_t>(w)]);
  }
}

void add_simulation_distribution(ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch,
                                 const sim::SimCampaignResult& res, const ReceiverTag& receiver, const std::string& label)
{
  double cumulative = 0.0;
  for (int w = 0; w <= cfg.Omega; ++w) {
    cumulative += res.empirical_pmf[static_cast<std::size_t>(w)];
    add_point(t, cfg, ch, "simulation", label, receiver)
      .set("omega", std::int64_t{w})
      .set("pmf", res.empirical_pmf[static_cast<std::size_t>(w)])
      .set("cdf", cumulative);
  }
}

}  // namespace rlnc::cli
