#pragma once

#include <iosfwd>

namespace apoint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCriterion = 3;

/// Parses argv and runs one subcommand. Tables go to --out (or `out`),
/// summaries and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apoint::cli
