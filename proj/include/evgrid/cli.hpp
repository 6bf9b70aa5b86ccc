#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace evgrid {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2 };

/// `simulate` entry point. `args` excludes the program name.
int run_simulate(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace evgrid
