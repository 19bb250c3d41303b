#pragma once

// Two-user, single-antenna lattice code built from Z[i, tau]:
// user 1 sends (x1, sigma(x1)), user 2 sends (gamma x2, sigma(x2)).

#include <array>
#include <compare>

#include "decaylab/ring.hpp"

namespace decaylab {

struct CodeConfig {
  /// Twist applied to user 2. The default i satisfies the generalized rank
  /// criterion; a norm element such as 1 does not.
  RingElem gamma = RingElem::i();

  static constexpr int kUsers = 2;
  static constexpr int kTxAntennas = 1;
};

/// Dispersed integer coordinates of one user: z1 = a + b i, z2 = c + d i.
struct UserCoords {
  BigInt a;
  BigInt b;
  BigInt c;
  BigInt d;

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  friend bool operator==(const UserCoords&, const UserCoords&) = default;
};

std::strong_ordering lex_compare(const UserCoords& x, const UserCoords& y);

/// x = z1 + z2 tau.
RingElem user_element(const UserCoords& u);

/// [[x1, sigma(x1)], [gamma x2, sigma(x2)]].
struct CompositeMatrix {
  RingElem x1;
  RingElem x2;
  RingElem gamma;

  CompositeMatrix(RingElem x1_, RingElem x2_, const CodeConfig& cfg = {})
      : x1(std::move(x1_)), x2(std::move(x2_)), gamma(cfg.gamma) {}

  std::array<std::array<RingElem, 2>, 2> entries() const;
  RingElem determinant() const;
};

/// x1 sigma(x2) - gamma sigma(x1) x2.
RingElem bb_determinant(const RingElem& x1, const RingElem& x2, const CodeConfig& cfg = {});

/// |det|^2 as an exact element of Z[tau].
QuadInt det_abs_squared(const RingElem& x1, const RingElem& x2, const CodeConfig& cfg = {});

/// True iff one input is zero or the composite matrix is invertible.
bool rank_criterion_check(const RingElem& x1, const RingElem& x2, const CodeConfig& cfg = {});

/// Determinant coordinates in the (R + S tau) + (T + V tau) i naming.
struct DetCoefficients {
  BigInt R;
  BigInt S;
  BigInt T;
  BigInt V;
};

DetCoefficients det_coefficients(const RingElem& det);

/// The determinant is bilinear in the two coordinate vectors, so
/// coordinate k of det equals sum_ij table[k][i][j] u1[i] u2[j] with
/// table[k][i][j] = coordinate k of det(e_i, e_j). The bound constant is
/// max over the S and V coordinates of the sum of absolute coefficients,
/// giving |S|, |V| <= k1 * N1 * N2 on the boxes [-N1,N1]^4 x [-N2,N2]^4.
struct CoefficientBound {
  std::array<std::array<std::array<BigInt, 4>, 4>, 4> table;
  BigInt k1;
};

CoefficientBound coefficient_bound(const CodeConfig& cfg = {});

}  // namespace decaylab
