#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmoment::cli {

enum ExitCode : int { kOk = 0, kIoError = 1, kModelError = 2 };

/// Runs the command line `args` (without the program name). Paths given as
/// "-" read from `in` or write to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tmoment::cli
