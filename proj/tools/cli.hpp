#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace palm::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kUsageError = 2 };

// Runs the palmid command line. args excludes the program name. Results go
// to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace palm::cli
