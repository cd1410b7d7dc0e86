#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgedp::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kConvergence = 2,
    kMismatch = 3,
};

/// Runs one command line (without the program name), e.g. {"solve", "--mode", "emes"}.
/// Data goes to `out`, diagnostics and comparison reports to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kgedp::cli
