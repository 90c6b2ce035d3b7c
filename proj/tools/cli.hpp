#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gridsched::cli {

// Exit codes: stable contract for scripts.
inline constexpr int kOk = 0;
inline constexpr int kIoError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kOracleBudget = 3;

// Runs the gridsched command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridsched::cli
