#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace framecheck {

/// Command-line entry point without the program name. Returns the exit
/// status: 0 pass, 1 structural/visual/plan failure, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace framecheck
