#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hslope::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;    // bad input, failed contract, parse error
inline constexpr int kExitNumeric = 3;  // numeric failure, precision exhausted

/// Runs `hslope <args...>` in-process. `args` excludes the program name.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hslope::cli
