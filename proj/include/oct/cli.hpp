#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oct {

// Entry point of the command-line tool, separated from main() so tests can
// drive it in-process. args excludes the program name. Exit codes: 0 ok,
// 1 usage or parse error, 2 unsat, 3 verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oct
