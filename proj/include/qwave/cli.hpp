#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qwave::cli {

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;      // I/O or runtime error
inline constexpr int exit_usage = 2;        // bad flags or inputs violating a precondition
inline constexpr int exit_not_converged = 3; // DR stopped at max_iter, or a bank failed validation

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qwave::cli
