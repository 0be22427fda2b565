#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace posreal::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kNoPositiveRealization = 1,
  kUnsupported = 2,
  kInputError = 3,
  kVerificationFailure = 4,
};

/// Entry point behind the `posreal` executable; args exclude the program
/// name. Subcommands: realize, bounds, verify, impulse.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posreal::cli
