#pragma once

#include "rlnc/config.hpp"
#include "rlnc/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlnc::cli {

enum class SweepAxis
{
  Epsilon,
  Omega,
  K,
  Q,
};

/// One value on the sweep axis. Labels come from `point` lines.
struct SweepPoint
{
  double value = 0.0;
  std::string label;
};

/// Parsed sweep description.
///
/// Text format, one `key = value` per line, `#` starts a comment:
///
///   axis        = epsilon | Omega | K | q        (required, exactly once)
///   values      = v1, v2, ...                    explicit axis values
///   range       = start:stop:step                inclusive of stop
///   point       = <label> <epsilon>              labelled epsilon, repeatable;
///                                                only with axis = epsilon
///   K, q, Omega, epsilon                         fixed parameters
///   schemes     = nonsys, sys                    default: both
///   simulate    = true | false                   default: false
///   generations = <count>                        default: 10000
///   seed        = <integer>                      default: 1
///
/// Exactly one of values / range / point must supply the axis values.
struct SweepSpec
{
  SweepAxis axis = SweepAxis::Epsilon;
  std::vector<SweepPoint> points;
  CodeConfig fixed;
  double epsilon = 0.1;
  std::vector<Scheme> schemes{Scheme::NonSystematic, Scheme::Systematic};
  bool simulate = false;
  std::uint64_t generations = 10000;
  std::uint64_t seed = 1;
};

class SweepSpecError : public std::runtime_error
{
public:
  SweepSpecError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

SweepSpec parse_sweep_spec(std::istream& in);

/// Theory (and optionally simulation) rows for every point and scheme, in
/// the summary layout.
report::ResultTable run_sweep(const SweepSpec& spec, unsigned threads = 1);

}  // namespace rlnc::cli
