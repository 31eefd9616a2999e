#pragma once

// Command-line front end: subcommands series, solve, invariants, limits,
// tycz, epsilon, hnorm and verify-all. Exit codes: 0 all checks pass,
// 2 a numerical check failed, 3 usage error.

#include <iosfwd>

namespace tycz {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitUsage = 3;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tycz
