#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace advgrasp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;  ///< bad flags, config, or IO
inline constexpr int kExitNumerical = 3;

/// Entry point of the `advgrasp` tool; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace advgrasp::cli
