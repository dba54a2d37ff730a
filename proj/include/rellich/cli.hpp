#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rellich::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 1;
inline constexpr int kExitFail = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitUsage = 64;

inline constexpr int kSchemaVersion = 1;

/// Runs the command line `args` (without the program name) and returns the
/// process exit status. JSON goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rellich::cli
