#pragma once

#include <iosfwd>

namespace pittlab::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_domain = 2, exit_internal = 3 };

/// Parses argv, runs the subcommand and writes records to --out (appending) or to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pittlab::cli
