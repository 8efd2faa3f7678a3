#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stieltjes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
/// Undefined or divergent result, failed comparison, or unreproduced witness.
inline constexpr int kExitIndeterminate = 2;

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stieltjes::cli
