#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace apcss::cli {

/// Exit codes of the `apcss` tool.
enum ExitCode : int {
  kOk = 0,
  kIoFailure = 1,
  kInvalidArguments = 2,
  kCalibrationProblem = 3,
};

/// Runs one `apcss` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apcss::cli
