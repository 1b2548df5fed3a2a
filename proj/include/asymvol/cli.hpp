#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asymvol {

/// Runs the command line `args` (without the program name). Returns the
/// process exit code: 0 success, 1 computational error or failed assertion,
/// 2 configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asymvol
