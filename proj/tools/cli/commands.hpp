#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbftune::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `rbftune` executable. `args` excludes the program
/// name. Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbftune::cli
