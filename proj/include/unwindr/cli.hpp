#pragma once

#include <iosfwd>

namespace unwindr::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

/// Runs one invocation. Reports go to `out` (or the --out path), diagnostics
/// and error names to `err`; `in` backs `--in -` and a missing --in.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace unwindr::cli
