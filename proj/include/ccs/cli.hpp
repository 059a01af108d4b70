#pragma once

#include <string>
#include <vector>

namespace ccs {

// Command-line front end: search / classify / polya / stability / verify.
// Returns the process exit status (0 success, 2 inconclusive run, 1 error).
int cli(const std::vector<std::string>& args);

} // namespace ccs
