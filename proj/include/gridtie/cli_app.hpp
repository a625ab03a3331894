#pragma once

#include <string>
#include <vector>

namespace gridtie {

// Command-line front end: sweep, simulate and gain subcommands. args are the
// arguments after the program name. Returns the process exit code: 0 on
// success, 1 on usage or configuration errors, 2 on numerical failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace gridtie
