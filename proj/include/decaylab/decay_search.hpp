#pragma once

// Minimum |det|^2 of the composite matrix over nonzero constellation pairs
// in [-N1,N1]^4 x [-N2,N2]^4.
//
// The search scans one representative per orbit of the unit group
// {1, i, -1, -i} for each user (multiplying either user by a unit multiplies
// the determinant by a unit), prunes with certified double-precision lower
// bounds and confirms every surviving candidate in exact arithmetic.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "decaylab/codes.hpp"

namespace decaylab {

struct SearchBox {
  int n1 = 1;
  int n2 = 1;

  /// Throws std::invalid_argument unless n1, n2 >= 1.
  void validate() const;
};

struct DecayRecord {
  int n1 = 0;
  int n2 = 0;
  QuadInt min_detsq;
  double min_detsq_float = 0.0;
  UserCoords witness1;
  UserCoords witness2;
  std::uint64_t orbit_reduced_count = 0;
  std::uint64_t visited_pairs = 0;
  /// Candidates that survived the float filters and were compared exactly.
  std::uint64_t exact_confirmations = 0;
  double wall_time = 0.0;

  /// D(n1, n2) = sqrt(min_detsq), for reporting.
  double decay_value() const;
};

/// Reduced pair count above this is refused unless overridden.
inline constexpr std::uint64_t kDefaultPairBudget = 10'000'000'000ULL;

/// Relative slack of the float prefilter.
inline constexpr double kPruneMargin = 1e-9;

struct SearchOptions {
  unsigned workers = 1;
  std::uint64_t budget = kDefaultPairBudget;
  bool override_budget = false;
  /// Shuffle the traversal order of both representative lists. The result
  /// does not depend on it; tests use it to check that.
  std::optional<std::uint64_t> shuffle_seed;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t pairs, std::uint64_t budget);
  std::uint64_t pairs() const { return pairs_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t pairs_;
  std::uint64_t budget_;
};

/// One representative per unit orbit of the nonzero box [-N,N]^4, the
/// lexicographically smallest orbit member, in increasing lex order.
/// Exactly ((2N+1)^4 - 1) / 4 entries.
std::vector<UserCoords> enumerate_orbit_reps(int n);

/// x -> i x on coordinates: (a, b, c, d) -> (-b, a, -d, c).
UserCoords times_i(const UserCoords& u);

/// Number of reduced pairs scanned for the box.
std::uint64_t reduced_pair_count(int n1, int n2);

/// Exact minimum over all nonzero pairs. Among minimizers the witness is the
/// lexicographically smallest (witness1, witness2).
DecayRecord decay(int n1, int n2, const CodeConfig& cfg = {}, const SearchOptions& opts = {});

enum class SeriesMode { equal, fixed_second };

/// Records for N = 1..nmax at (N, N) or (N, 1). The budget is checked for
/// every box before any search starts.
std::vector<DecayRecord> decay_series(int nmax, SeriesMode mode, const CodeConfig& cfg = {},
                                      const SearchOptions& opts = {});

}  // namespace decaylab
