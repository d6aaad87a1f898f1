#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schwarz_atlas::cli {

/// Exit codes: 0 success, 1 numeric failure or a residual above its
/// tolerance, 2 invalid input.
enum ExitCode : int { kOk = 0, kNumeric = 1, kInvalid = 2 };

/// Runs one command. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schwarz_atlas::cli
