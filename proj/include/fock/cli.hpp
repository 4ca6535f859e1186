#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fock::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

/// Runs the fock-sharp command line with args[0] as the program name.
/// Payloads go to `out` (or the --out file), summaries and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fock::cli
