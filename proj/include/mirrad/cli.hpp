#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mirrad::cli {

// Dispatches the command line (forward order, program name excluded) and
// writes results to `out` unless --out redirects them to a file.
// Exit codes: 0 success, 2 usage/validation error, 3 numerical failure
// (no resonance peak, exactly singular system, failed check).
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace mirrad::cli
