#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace futs::cli {

enum ExitCode : int { kOk = 0, kFails = 1, kUsage = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace futs::cli
