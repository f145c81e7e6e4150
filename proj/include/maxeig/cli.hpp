#pragma once

#include <iosfwd>

namespace maxeig {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,      ///< generic failure; `reproduce` with a gated mismatch
  kExitParse = 2,        ///< bad flags, bad matrix file, bad model spec
  kExitConvergence = 3,  ///< iteration limit reached
  kExitDomain = 4,       ///< input outside an algorithm's domain
};

/// Entry point of the `maxeig` tool with injectable streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maxeig
