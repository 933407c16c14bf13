#pragma once

#include "rlnc/report.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rlnc::cli {

/// Grid overrides; an empty list keeps the figure's default grid.
struct FigureOptions
{
  std::vector<int> K;
  std::vector<std::uint64_t> q;
  std::vector<double> epsilon;
  std::vector<int> N;
  /// Simulation campaigns (fig4 only).
  std::uint64_t generations = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct FigurePanel
{
  std::string name;
  report::ResultTable table;
};

/// Names accepted by make_figure.
const std::vector<std::string>& figure_names();

/// Data for one figure, one table per panel:
///
///   fig2   bound brackets vs q at K=30 (1/(1-eps) factor omitted)
///          columns q, K, tight_bound, lucani_first, lucani_second, source
///   fig3a/b  unconstrained delay and its bounds vs eps, K in {20,25,30},
///          q = 2 / 4; columns q, K, epsilon, lower_bound, upper_bound,
///          delay_nonsys, delay_sys
///   fig4a/b  theory vs simulation of the capped average transmissions,
///          K=30, N in {36,40,45}, q = 2 / 4; long format with a scheme column
///   fig5a/b  average transmissions of both schemes, K=10..30, N=floor(1.5K),
///          eps=0.1, q = 2 / 4
///   fig6   average overhead vs Omega/K at eps=0.1, K in {20,60,100},
///          q in {2,4,16}
///
/// Throws std::invalid_argument for an unknown name.
std::vector<FigurePanel> make_figure(std::string_view name, const FigureOptions& options = {});

}  // namespace rlnc::cli
