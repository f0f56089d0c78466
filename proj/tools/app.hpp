#pragma once

#include <iosfwd>

namespace nlheat::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kToleranceViolated = 1,
    kConfigError = 2,
    kDivergence = 3,
    kIoError = 4,
};

/// Entry point of the `nlheat` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nlheat::cli
