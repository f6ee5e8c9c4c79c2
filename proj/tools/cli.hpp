#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jtree::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kValidation = 2;
inline constexpr int kNumeric = 3;
inline constexpr int kInconclusive = 4;

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jtree::cli
