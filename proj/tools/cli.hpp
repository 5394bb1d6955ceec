#pragma once

#include <iosfwd>
#include <vector>
#include <string>

namespace polarnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one polarnet command. JSON goes to `out` unless --output names a
/// file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polarnet::cli
