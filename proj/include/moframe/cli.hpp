#pragma once

#include <ostream>

namespace moframe::cli {

/// Command-line front end. Exit codes: 0 success, 1 a verdict demanded via
/// --expect came out false, 2 input error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace moframe::cli
