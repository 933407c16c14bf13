#pragma once

#include "rlnc/config.hpp"
#include "rlnc/report.hpp"
#include "rlnc/sim.hpp"
#include "rlnc/theory.hpp"

#include <string>

namespace rlnc::cli {

/// Receiver column value: a receiver index, "system", or empty.
using ReceiverTag = report::Cell;

void add_theory_summary(report::ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch, const std::string& label = {});
void add_oracle_summary(report::ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch, const std::string& label = {});
void add_simulation_summary(report::ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch,
                            const sim::SimCampaignResult& res, const ReceiverTag& receiver = {}, const std::string& label = {});

void add_theory_distribution(report::ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch, const std::string& label = {});
void add_oracle_distribution(report::ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch, const std::string& label = {});
void add_simulation_distribution(report::ResultTable& t, const CodeConfig& cfg, const ChannelSpec& ch,
                                 const sim::SimCampaignResult& res, const ReceiverTag& receiver = {}, const std::string& label = {});

}  // namespace rlnc::cli
