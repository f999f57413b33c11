#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tf {

// Runs one CLI invocation; returns the process exit code.
// 0 = ok, 1 = fail, 2 = parse/usage error, 3 = unknown verdict.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tf
