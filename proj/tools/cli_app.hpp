#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace invfac::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kUnknownKey = 3,
};

/// Runs the command line `args` (without the program name). Everything the
/// command prints goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invfac::cli
