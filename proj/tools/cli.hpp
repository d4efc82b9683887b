#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace photocorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;

// Runs the command line; args[0] is the program name. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace photocorr::cli
