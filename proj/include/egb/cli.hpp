#pragma once

#include <string>
#include <vector>

namespace egb {

// Exit codes: 0 success, 1 usage error, 2 invalid input file, 3 internal
// invariant failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace egb
