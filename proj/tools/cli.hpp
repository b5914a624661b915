#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace simulroot::cli {

/// Stable exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kNotConverged = 2,
  kVerificationFailed = 3,
};

struct Environment {
  /// Value of SIMULROOT_DIGITS, if set.
  std::optional<std::string> digits;

  static Environment from_process();
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace simulroot::cli
