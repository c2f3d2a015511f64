#pragma once

#include <ostream>

namespace risjam {

/// Exit statuses of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Entry point behind the `risjw` binary: subcommands run, validate and sweep-list.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace risjam
