#pragma once

#include <iosfwd>

namespace gch {

/// Exit codes of the command-line driver.
enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitConfigError = 2 };

/// Subcommands: simulate, blowup, kernel-check, invariants, converge.
/// The output directory is --out, else $GCH_OUT_DIR, else out_dir from the
/// config, else ./gch_out.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace gch
