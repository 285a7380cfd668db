#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stiefel {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

/// Runs the stiefel-poly command line. `args` excludes the program name.
/// Library failures are reported on `err` as one JSON line
/// {"error": "<Kind>", "message": "..."}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stiefel
