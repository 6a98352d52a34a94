#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kg2 {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,     ///< bad arguments or formula syntax
  kExitLimit = 3,     ///< a search passed its resource cap
  kExitBadFile = 4,   ///< malformed model, frame or classical-model file
  kExitInternal = 5,  ///< a self-check failed
};

/// Runs one invocation. `args` excludes the program name. The verdict document
/// goes to `out`, the human-readable summary and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kg2
