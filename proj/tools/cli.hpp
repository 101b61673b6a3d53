#pragma once

#include <iosfwd>

namespace sptp_cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kNumericalFailure = 2,
    kVerificationFailure = 3,
};

/// Runs the command line. Results go to `out` (or the configured output
/// file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sptp_cli
