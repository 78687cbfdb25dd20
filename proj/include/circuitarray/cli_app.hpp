#pragma once

#include <string>
#include <vector>

namespace circuitarray {

// Runs the command-line tool. Exit codes: 0 success (including runs that only
// surface reference discrepancies), 2 invalid arguments or impossible bounds,
// 3 inconclusive recurrence mining, 4 resource exhaustion, 1 internal error.
int run_cli(const std::vector<std::string>& args);

}  // namespace circuitarray
