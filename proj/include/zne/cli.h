#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zne::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVerificationFailed = 2;

/// Entry point behind the `zne` binary: plan, simulate, sweep, grid, verify.
/// Results go to `--out` when given, otherwise to `out`; diagnostics go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Convenience for tests: args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace zne::cli
