#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subsum {

// Exit codes: 0 success, 1 hypothesis failed, 2 budget exceeded, 3 usage or input error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subsum
