#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uniserial {

/// Dispatches one CLI invocation. Exit code 0 on decisive success, 2 when a
/// verdict is Unknown, 1 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uniserial
