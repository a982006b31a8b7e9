#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace basel::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitClaimFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNonConvergence = 3;

/// Entry point behind the `basel` executable. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace basel::cli
