#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fractalnet::cli {

/// Entry point shared by the executable and the tests. Returns 0 on success,
/// 1 on usage errors and 2 on runtime failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fractalnet::cli
