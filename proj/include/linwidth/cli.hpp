// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linwidth {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitBudget = 2, kExitInternal = 3 };

/// Parses `args` (without the program name), runs one subcommand and writes
/// its JSON result to `out`. Errors go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linwidth
