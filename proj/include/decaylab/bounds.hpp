#pragma once

// Diophantine approximation of tau, decay-exponent fitting, bound
// conformance over search records, and the two-user MAC-DMT condition.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "decaylab/decay_search.hpp"
#include "decaylab/ring.hpp"
#include "decaylab/sequences.hpp"

namespace decaylab {

/// Convergent h/k of tau with quality k * |k tau - h|.
struct Convergent {
  BigInt h;
  BigInt k;
  double quality = 0.0;
};

/// k * |k tau - h| for k > 0, evaluated without cancellation.
double approximation_quality(const BigInt& h, const BigInt& k);

/// Convergents 2/1, 3/2, 5/3, 8/5, ... (ratios of consecutive Fibonacci
/// numbers) with k <= k_max.
std::vector<Convergent> tau_convergents(const BigInt& k_max);

/// C = 1/(1 + sqrt5): the constant from Liouville's argument for x^2 - x - 1,
/// so |k tau - h| > C / k for all integers h and k > 0.
double liouville_effective_constant();

/// Limit of the convergent qualities, 1/sqrt5.
double golden_hurwitz_constant();

struct ExponentFit {
  double delta = 0.0;
  double constant = 0.0;
  double residual = 0.0;
  int sample_count = 0;
};

/// Least squares of log D against log N; delta = -slope, constant =
/// exp(intercept), residual = RMS. Points are (N, D).
ExponentFit fit_exponent(std::span<const std::pair<double, double>> points);

/// (N, D) points of a series: N = max(n1, n2), D = sqrt(min |det|^2).
std::vector<std::pair<double, double>> decay_points(std::span<const DecayRecord> records);

struct WitnessPoint {
  unsigned n = 0;
  double size1 = 0.0;
  double size2 = 0.0;
  double abs_det = 0.0;
  /// size1 * size2 * |det|, bounded above and below along the series.
  double scaled = 0.0;
  /// -log|det| / log max(size1, size2).
  double exponent = 0.0;
};

struct BoundsReport {
  /// min over records of n1 * n2 * D(n1, n2).
  double k_emp = 0.0;
  std::size_t k_emp_index = 0;
  /// max over the (N, 1) records of N * D(N, 1); absent without such records.
  std::optional<double> c_emp;
  std::size_t c_emp_index = 0;
  bool all_positive = false;
  std::vector<WitnessPoint> witnesses;
};

/// Throws std::invalid_argument on an empty record list.
BoundsReport verify_bounds(std::span<const DecayRecord> records,
                           std::span<const UnbalancedSplit> witnesses = {});

// ----------------------------------------------------------------- DMT
//
// Exact rational arithmetic throughout; the r = 1/5 boundary is decided
// without rounding.

/// Point-to-point DMT with p transmit and q receive antennas: piecewise
/// linear through (k, (p - k)(q - k)), k = 0..min(p, q).
Rational dmt_point_to_point(int p, int q, const Rational& x);

/// Maximum sum rate for diversity 2 - 2r: (2 + 2r)/3 on [0, 1/2], 2r on [1/2, 1].
Rational dmt_rS(const Rational& r);

enum class DeltaMode { theoretical_2r, empirical };

struct DmtQuery {
  Rational r;
  DeltaMode mode = DeltaMode::theoretical_2r;
  /// Used in empirical mode only.
  Rational empirical_delta;
};

struct DmtResult {
  Rational lhs;  // 2r + delta
  Rational rhs;  // r_S(r)
  bool optimal = false;  // lhs <= rhs
};

DmtResult dmt_optimality(const DmtQuery& q);

/// Largest r in [0, 1] such that the condition holds on all of [0, r];
/// empty when it fails already at r = 0. Theoretical mode gives 1/5.
std::optional<Rational> dmt_threshold(DeltaMode mode, const Rational& empirical_delta = 0);

/// Parses "num/den" or an integer; throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

}  // namespace decaylab
