#pragma once

// Small determinants from powers of 2 - sqrt5 and their factorizations.
//
// a_n - b_n sqrt5 = (2 - sqrt5)^n. With x2 = 1 and x1 = z_n = a_n + i sqrt5 b_n
// the composite determinant is (a_n - b_n sqrt5)(1 - i). When 5 | n, z_n
// splits into z_{n/5} and two cyclotomic factors m_j(n/5), which lets the
// energy be shared between the two users.

#include <array>
#include <vector>

#include "decaylab/ring.hpp"

namespace decaylab {

struct AlphaPower {
  unsigned n = 0;
  BigInt a;
  BigInt b;
};

AlphaPower alpha_power(unsigned n);

/// a_n + i sqrt5 b_n = (a_n, -b_n, 0, 2 b_n). Requires n >= 1.
RingElem z_element(unsigned n);

/// m_j(n) = u^{-1} p_j(u) with u = alpha^{2n}, alpha = 2 + sqrt5:
///   m1 = 2 b_{2n} sqrt5 + i(1 - tau),  m2 = 2 b_{2n} sqrt5 - i(1 - tau),
///   m3 = 2 b_{2n} sqrt5 + i tau,       m4 = 2 b_{2n} sqrt5 - i tau.
RingElem m_factor(int j, unsigned n);

/// The quadratic factors p1..p4 of the 20th cyclotomic polynomial over E.
RingPoly cyclotomic_factor(int j);
RingPoly phi20();

/// z_{5n} = z_n m_j(n) m_{j+2}(n) with j = 2 for odd n and j = 1 for even n.
struct Z5nFactorization {
  unsigned n = 0;
  int j = 0;
  RingElem z;
  RingElem m_low;   // m_j(n)
  RingElem m_high;  // m_{j+2}(n)

  RingElem product() const { return z * m_low * m_high; }
};

Z5nFactorization factor_z5n(unsigned n);

/// Factors of z_n obtained by applying the z_{5n} identity while the index
/// is divisible by 5. Order: innermost z first, then m-factors by depth.
std::vector<RingElem> z_atoms(unsigned n);

/// Split of z_n into a codeword pair: x1 * sigma(x2) = z_n.
struct Split {
  RingElem x1;
  RingElem x2;
  BigInt size;  // max absolute coordinate over x1 and x2
  unsigned mask = 0;  // bit k set: atom k goes to user 1
};

/// Exhaustive over the 2^k assignments of atoms to users; smallest size wins,
/// ties go to the smaller mask.
Split balanced_split(const std::vector<RingElem>& atoms);

/// log|det| = log(sqrt2) + n log|2 - sqrt5| for the determinant of z_n.
double log_abs_det(unsigned n);

/// exact |det|^2 = |(2 - sqrt5)^n (1 - i)|^2.
QuadInt sequence_detsq(unsigned n);

struct SequenceRecord {
  unsigned n = 0;
  BigInt a_n;
  BigInt b_n;
  RingElem z;
  std::vector<RingElem> factors;
  RingElem x1;
  RingElem x2;
  BigInt m;
  QuadInt detsq;
  double delta_estimate = 0.0;  // -log|det| / log m, natural logs
};

/// Balanced split of z_n for n in {5, 10, 15, 20, 25}.
SequenceRecord table_row(unsigned n);
std::vector<SequenceRecord> table_rows();

inline constexpr std::array<unsigned, 5> kTableIndices = {5, 10, 15, 20, 25};

/// Unbalanced pair x1 = z_n m_j(n), x2 = sigma(m_{j+2}(n)) for z_{5n}, with
/// coordinates of size about alpha^{3n} and alpha^{2n}.
struct UnbalancedSplit {
  unsigned n = 0;
  RingElem x1;
  RingElem x2;
  BigInt size1;
  BigInt size2;
  QuadInt detsq;
  /// log size1 / log size2, tends to 3/2.
  double log_size_ratio = 0.0;
};

UnbalancedSplit unbalanced_split(unsigned n);
std::vector<UnbalancedSplit> unbalanced_series(unsigned k_max);

}  // namespace decaylab
