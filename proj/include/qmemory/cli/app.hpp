#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmemory::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidArguments = 1,
  kExitValidationFailure = 2,
  kExitIoError = 3,
};

/// Entry point of the `qmemory` tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmemory::cli
