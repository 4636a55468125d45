#pragma once

#include <iosfwd>

namespace lpmult {

/// Entry point of the lpmult command line. Exit codes: 0 success, 1
/// unexpected failure, 2 invalid configuration, 3 cross-check failure,
/// 4 store error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lpmult
