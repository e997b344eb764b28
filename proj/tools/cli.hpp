#pragma once

#include <iosfwd>

namespace accsample::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 2,
    kNoPlan = 3,
    kValidationFailure = 4,
};

/// Runs the command line `argv` writing results to `out` (unless --output
/// redirects them) and diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace accsample::cli
