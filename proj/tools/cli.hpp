#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzyl::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kUsageError = 2,
  kResourceError = 3,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzyl::cli
