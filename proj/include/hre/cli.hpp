#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hre::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFindings = 1;
inline constexpr int kInputError = 2;
inline constexpr int kSolverError = 3;

// Runs the command line `args` (args[0] is the program name). Results go to
// `out` unless --output is given; one-line error codes and warnings go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hre::cli
