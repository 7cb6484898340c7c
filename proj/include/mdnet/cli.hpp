#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mdnet {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitConstraintViolated = 3,
};

/// Runs the command line `args` (without the program name). JSON results go
/// to `out`, diagnostics and usage text to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdnet
