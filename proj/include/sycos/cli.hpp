#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sycos {

// Runs the command line; returns 0 on success, 2 on usage or configuration
// errors and 1 on runtime failures.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace sycos
