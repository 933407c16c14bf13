#pragma once

#include <iosfwd>

namespace rlnc::cli {

enum ExitCode : int
{
  kExitOk = 0,
  kExitUsage = 2,
  kExitNumeric = 3,
};

/// Entry point of the rlnc-delay tool. Results go to `out` (or the --out
/// file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rlnc::cli
