#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fps::cli {

// Runs the command-line front end.  Returns the process exit status: 0 on
// success (including mathematically negative findings such as RhsNotExists),
// nonzero on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace fps::cli
