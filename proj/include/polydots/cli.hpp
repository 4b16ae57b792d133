#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polydots {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,        // malformed flags, spec file or window
  kExitNoRealShape = 2,  // analysis succeeded but some on-axis points are complex
  kExitVerifyFailed = 3,
};

/// Runs one CLI invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polydots
