#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nokequal::cli {

enum ExitCode { Ok = 0, Usage = 1, BadInput = 2, TooLarge = 3 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nokequal::cli
