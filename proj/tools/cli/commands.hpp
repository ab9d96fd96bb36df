#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loccmc::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the tool on `args` (without the program name). The JSON record of
/// the run goes to `out`, diagnostics to `err`; result files are written
/// under --out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loccmc::cli
