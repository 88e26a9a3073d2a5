#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blotto {

// Exit codes: 0 success, 1 infeasible or precondition failed, 2 malformed
// input, 3 cap exceeded. Output is written only when the command completes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blotto
