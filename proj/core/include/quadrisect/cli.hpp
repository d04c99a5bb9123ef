#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadrisect::cli {

/// Exit codes are part of the contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitGeneralPosition = 2;
inline constexpr int kExitVerifyMismatch = 3;
inline constexpr int kExitIo = 4;

/// Run the command line given argv-style arguments (without the program
/// name). Machine output goes to `out`, diagnostics to `err`.
///
/// Subcommands:
///   check <knot.json>                     general-position report
///   enumerate <knot.json>                 quadrisecant report
///   census --n-max N [--verify]           census rows 3..N
///   bound --n N                           the bound for n edges
///   generate --kind K [--n N] [--seed S] [--perturb P] [--radius R]
///   export-obj <knot.json> [--report R]   OBJ polyline + quadrisecants
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace quadrisect::cli
