#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mmnoma {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidConfig = 1,
    kExitIoFailure = 2,
};

/// Runs the simulator CLI on `args` (program name excluded). The results CSV
/// goes to --output; the summary table is printed to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mmnoma
