#pragma once

#include <iosfwd>

namespace phqm::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verification = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_precondition = 3;
inline constexpr int exit_numerical = 4;

/// Entry point of the `phqm` tool; reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phqm::cli
