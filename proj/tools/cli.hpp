#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subdcor::cli {

/// Runs one CLI invocation. Returns 0 on success, 1 on runtime failure and 2 on
/// usage errors. argv[0] is the program name.
int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace subdcor::cli
