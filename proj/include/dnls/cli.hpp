#pragma once

#include <iosfwd>

namespace dnls {

/// Exit codes: 0 all verdicts pass, 2 some verdict fails, 1 error.
enum ExitCode : int { kExitPass = 0, kExitError = 1, kExitVerdictFail = 2 };

/// Entry point of the dnls command line (subcommands run, sweep, verify,
/// odi-table, gn-estimate, design-source).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dnls
