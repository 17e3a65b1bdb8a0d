#pragma once

#include <iosfwd>

namespace stbc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kVerificationFailure = 2,
};

/// Environment variable holding the default --seed.
inline constexpr const char* kSeedEnv = "STBC_SEED";

/// Entry point of the `stbc` tool. Subcommands: construct, verify, diversity,
/// simulate, sweep. Results go to `out` (or --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stbc::cli
