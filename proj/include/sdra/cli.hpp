#pragma once

// Command-line front end. Units at this boundary are millimetres, degrees
// and GHz; everything is converted to SI before reaching the library.

#include <ostream>
#include <string>
#include <vector>

namespace sdra::cli {

/// Runs one invocation. `args` excludes the program name. Data goes to
/// `out` (unless --output is given), diagnostics to `err`.
/// Returns 0 on success, 2 on a usage error, 1 on a computation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdra::cli
