#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbloch::cli {

/// Runs the tool on argv-style arguments without the program name.
/// Exit codes: 0 all checks passed, 1 a mathematical check failed,
/// 2 usage error, malformed input or I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbloch::cli
