#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nulla::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_budget = 3;
inline constexpr int exit_no_certificate = 10;

/// Runs `nulla <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nulla::cli
