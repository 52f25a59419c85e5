#pragma once

#include <iosfwd>

namespace twolayer::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kSolver = 3 };

/// Runs one subcommand: stationary | evolve | threshold | sweep | oracle-check | validate.
/// JSON goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twolayer::cli
