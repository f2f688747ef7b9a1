#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psets::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kCapExceeded = 2,
  kInvariant = 3,
};

/// Runs one command. `args` excludes the program name. Output goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psets::cli
