#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toybit::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 success or equal, 1 not equal or a failed check, 2 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toybit::cli
