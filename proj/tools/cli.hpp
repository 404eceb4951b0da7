#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circumcone::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Parses `args` (without the program name) and runs one subcommand.
/// Results go to `out`, diagnostics to `err`. Returns the exit status:
/// 0 ok, 1 domain error (message carries the error name), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circumcone::cli
