#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "actsel/error.hpp"

namespace actsel::cli {

// Process exit codes. Codes 2-8 are specific to this tool; the rest follow
// sysexits.h.
inline constexpr int kOk = 0;
inline constexpr int kInfeasible = 2;
inline constexpr int kUncontrollable = 3;
inline constexpr int kNotCertified = 4;
inline constexpr int kVerifyFailed = 5;
inline constexpr int kDecompositionFailed = 6;
inline constexpr int kBudgetExceeded = 7;
inline constexpr int kConditioningFailed = 8;
inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;
inline constexpr int kNoInput = 66;
inline constexpr int kSoftware = 70;

int exit_code_for(ErrorKind kind);

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace actsel::cli
