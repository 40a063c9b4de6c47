#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tickcheck::cli {

enum Exit : int { Satisfied = 0, Counterexample = 1, Unknown = 2, UsageError = 3, PreconditionFailed = 4 };

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tickcheck::cli
