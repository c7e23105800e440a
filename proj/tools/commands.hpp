#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trilink::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kNotNullHomologous = 3,
  kCorrespondenceMismatch = 4,
  kIo = 5,
};

/// Runs the command line `args` (args[0] is the program name). The report
/// goes to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trilink::cli
