#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace relcalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitCap = 2;

/// Runs one command line (args[0] is the program name). Output goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relcalc::cli
