#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dlp::cli {

enum ExitCode : int {
  kOk = 0,
  kPropertyFails = 1,
  kUsage = 2,
  kBudget = 3,
  kInvariant = 4,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlp::cli
