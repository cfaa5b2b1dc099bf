#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rvp {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitPlannerFailure = 4,
};

/// Entry point of the `rvp` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rvp
