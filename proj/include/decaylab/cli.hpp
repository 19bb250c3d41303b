#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace decaylab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Environment variable consulted when --budget is absent.
inline constexpr const char* kBudgetEnv = "DECAYLAB_BUDGET";

/// Runs the command line; args[0] is the program name. Normal output goes to
/// `out` unless --out redirects it, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckSummary {
  int trials = 0;
  int failures = 0;
  std::vector<std::string> lines;
};

/// Randomized ring-law, Galois, norm and comparison checks.
CheckSummary run_property_checks(std::uint64_t seed, int trials);

}  // namespace decaylab::cli
