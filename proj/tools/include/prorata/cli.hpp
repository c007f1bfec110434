#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prorata::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,  // bad flags, config file or input data
  kNoEquilibrium = 3,
  kNumericFailure = 4,
};

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --output names a file; errors are one line on `err`:
///   error: <code>: <message>
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prorata::cli
