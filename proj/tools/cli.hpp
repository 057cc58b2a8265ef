#pragma once

#include <ostream>

namespace projconst::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kGuard = 2;
inline constexpr int kResource = 3;

/// Runs one command line. JSON goes to `out` (or the --out file), the
/// human-readable summary to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace projconst::cli
