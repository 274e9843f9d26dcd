#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one toric-exc invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a 64-bit, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace toric::cli
