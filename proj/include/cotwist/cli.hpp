#pragma once

#include <ostream>

namespace cotwist {

// Exit codes: 0 all selected checks pass, 1 a check failed, 2 configuration or I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cotwist
