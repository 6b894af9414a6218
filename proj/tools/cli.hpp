#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mistab::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalid = 2,
  kIoError = 3,
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g, the CSV number format.
std::string format_number(double v);

}  // namespace mistab::cli
