#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rgfair::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitDomainFailure = 1,  // ranking failed verification, rerank infeasible
  kExitUsage = 2,          // bad flags, unreadable or malformed input
};

/// Runs the CLI on `args` (without the program name), writing normal output to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rgfair::cli
