#pragma once

#include <iosfwd>

namespace symhom {

// Exit codes: 0 success, 1 a verification did not hold, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symhom
