#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace doorkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. args excludes the program name. Primary output goes to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace doorkit::cli
