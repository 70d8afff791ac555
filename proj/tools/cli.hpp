#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace suitegen::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kRuntimeError = 2 };

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace suitegen::cli
