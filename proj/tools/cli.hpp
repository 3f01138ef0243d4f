#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smalelab::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;         // parse failure, bad flags, unreadable input
inline constexpr int kExitDomain = 2;        // input outside the mathematical domain
inline constexpr int kExitConditioning = 3;  // numerics could not certify a result
inline constexpr int kExitViolation = 4;     // verify found a failing assertion-class check

/// Runs one command line (without the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smalelab::cli
