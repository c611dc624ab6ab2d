#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace landcore {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNotFound = 2; // no path, unknown road
inline constexpr int kExitIo = 3;

// Runs one command. `args` excludes the program name. Results go to `out`,
// diagnostics to `err`.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace landcore
