#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lglab {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< solver error or failed verification
inline constexpr int kExitUsage = 2;

/// Runs `lglab <args...>` (args excludes the program name). Documents go to
/// out unless --out is given; diagnostics go to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lglab
