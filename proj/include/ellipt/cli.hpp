#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ellipt {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailure = 1,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitInternal = 4,
};

// Run the command-line interface on argv-style arguments (args[0] is the
// program name). Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellipt
