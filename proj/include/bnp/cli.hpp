#pragma once

#include <iosfwd>

namespace bnp {

// Command line driver. Exit codes: 0 success (solvable / verified),
// 1 usage, I/O or parse error, 2 unsolvable or failed verification,
// 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bnp
