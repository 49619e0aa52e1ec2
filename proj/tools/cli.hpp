#pragma once

#include <ostream>

namespace ssco::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParse = 2,
    kDimension = 3,
    kCostDimension = 4,
    kInfeasible = 5,
    kVerification = 6,
};

/// Runs the tool with the given arguments, writing reports to out and errors to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ssco::cli
