#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ckg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUser = 2;

// Runs one invocation. `args` excludes the program name. Subcommands:
// ingest, query, observe, rules, simulate, report.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ckg::cli
