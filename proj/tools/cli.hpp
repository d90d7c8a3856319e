#pragma once

#include <iosfwd>

namespace catiso::cli {

// Runs the catiso command line. Reports go to `out`, diagnostics to `err`.
// Exit codes: 0 success, 2 usage/precondition/format error, 3 corruption
// (including a tape that failed to restore).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace catiso::cli
