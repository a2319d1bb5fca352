#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eigentree {
namespace cli {

// Run one CLI invocation. Returns the process exit code:
//   0 success, 1 input/validation error, 2 numeric failure, 3 resource limit.
// `args` excludes the program name. Results go to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cli
}  // namespace eigentree
