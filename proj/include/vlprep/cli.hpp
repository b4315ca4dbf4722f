// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vlprep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitUsage = 64;

// Runs one subcommand (plan, tile, montage, assemble, rope, distill, dpo).
// `args` excludes the program name. Reports go to `out` unless a subcommand
// is told to write them to a file; errors go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vlprep::cli
