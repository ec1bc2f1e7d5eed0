#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

namespace freecsk::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs `freecsk <subcommand> ...` with argv[0] the program name. Tables go
/// to `out` (or to --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "a:b:step" (inclusive of b up to rounding) or "x1,x2,...".
/// std::invalid_argument on malformed text or a non-positive step.
std::vector<double> parse_grid(std::string_view text);

}  // namespace freecsk::cli
