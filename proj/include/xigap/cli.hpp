#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xigap {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_validation = 2,
  exit_accuracy = 3,
};

/// Runs one xigap subcommand. args excludes the program name. The artifact
/// goes to --out (or `out` when no path is given); the one-line summary goes
/// to `out` when an artifact file was written, else to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xigap
