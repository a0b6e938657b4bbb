#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vetocore {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudgetRefusal = 3;

/// Runs the command line `args` (args[0] is the program name). The JSON
/// report goes to `out`, one-line diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vetocore
