#pragma once

#include <string>
#include <vector>

namespace germforge {

/// Command-line entry point. Returns the process exit code:
/// 0 success, 2 parse error, 3 validation error (not a tangential
/// family), 4 inconclusive at the requested jet, 5 internal consistency
/// failure.
int run_cli(const std::vector<std::string>& args);

} // namespace germforge
