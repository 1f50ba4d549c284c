#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omegarl {

/// Entry point of the command-line tool. Returns the process exit code:
/// 0 success, 1 input error, 2 numeric non-convergence.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The zeta grid used by `sweep` when none is given.
const std::vector<double>& default_zeta_grid();

}  // namespace omegarl
