#pragma once

// Command-line front end.  Commands: classify, eval, verify, atlas, iterate.
// stdout carries data and stderr carries diagnostics.

#include <iosfwd>
#include <string>
#include <vector>

namespace wolffkit::cli {

enum ExitCode : int {
  kOk = 0,
  kBadArguments = 2,
  kQuadratureFailure = 3,
  kModeUnavailable = 4,
  kVerificationFailed = 5,
};

/// args excludes the program name.  A "--config FILE" argument supplies
/// key=value defaults that explicit flags override.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal text that reads back to the same double.
std::string format_shortest(double x);

}  // namespace wolffkit::cli
