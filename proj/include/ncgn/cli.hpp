#pragma once

#include <iosfwd>

namespace ncgn {

// Batch front-end.  Exit codes: 0 success, 1 input validation error,
// 2 analysis precondition failure, 64 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncgn
