#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kirch::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kInvalidInput = 2,
  kCapability = 3,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kirch::cli
