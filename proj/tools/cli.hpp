#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sumprod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  ///< run completed, verdict negative
inline constexpr int kExitUsage = 2;     ///< bad flags, unreadable or malformed input

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumprod::cli
