#pragma once

// The pglob command line: subcommands, JSON reports and exit codes.
//
//   0  success or positive verdict
//   1  negative verdict (not globalizable, violation found)
//   2  input error or usage error
//   3  a witness failed to replay or an internal check failed

#include <ostream>
#include <string>
#include <vector>

namespace pglob {

inline constexpr int kExitPositive = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// as a single JSON document; warnings and diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pglob
