#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace carver {

/// Runs the command-line tool on `args` (without the program name) and
/// returns the process exit code: 0 success, 1 failed verification or
/// internal error, 2 invalid input, 3 mathematical precondition violated,
/// 4 insufficient resolution.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace carver
