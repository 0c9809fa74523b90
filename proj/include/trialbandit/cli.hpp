#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trialbandit {

/// Exit code for malformed invocations (unknown flag, dataset or policy).
inline constexpr int kUsageError = 2;

/// Runs one command line (without the program name). Subcommands:
/// list-datasets, oracle, simulate. Returns the process exit status.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trialbandit
