#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvetop::cli {

// Runs the curvetop command line: args are the tokens after the program
// name.  Returns 0 on success, 1 on validation/domain failures, 2 on usage
// errors.  All output is deterministic.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvetop::cli
