#pragma once

#include <ostream>

namespace polyflood {

/// Entry point of the `polyflood` command. Returns 0 on success, 1 on a
/// runtime failure and 2 on a usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polyflood
