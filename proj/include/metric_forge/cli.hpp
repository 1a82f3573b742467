#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metric_forge::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kUsageError = 2,
};

// Runs one metric-forge command. `args` excludes the program name. Reports
// go to `out` unless a command writes to its -o path; diagnostics go to
// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metric_forge::cli
