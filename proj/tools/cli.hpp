#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace finite_hgf::cli {

/// Exit codes of the `finite-hgf` tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool on argv-style arguments (args[0] is the program name).
/// Normal output goes to `out`; warnings and errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace finite_hgf::cli
