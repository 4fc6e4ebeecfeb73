#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toricabel::cli {

/// Process exit codes.
enum Exit : int {
  kPass = 0,
  kDegenerate = 1,
  kInputError = 2,
  kNumericFailure = 3,
};

/// Runs one command line; argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace toricabel::cli
