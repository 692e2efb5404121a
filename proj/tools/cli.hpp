#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fwrank::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fwrank::cli
