#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace unitarize::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNegative = 2;

/// Parses `args` (without the program name), dispatches one subcommand and
/// writes its report to `out`. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unitarize::cli
