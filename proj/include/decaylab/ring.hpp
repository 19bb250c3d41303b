#pragma once

// Exact arithmetic in the ring of integers Z[i, tau] of Q(i, sqrt5) and the
// subrings Z[tau] and Z[i]. tau is the golden ratio, root of x^2 - x - 1.

#include <compare>
#include <complex>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace decaylab {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Double nearest to the golden ratio (1 + sqrt5) / 2.
inline constexpr double kTau = 1.6180339887498949;

/// p + q*tau in Z[tau].
struct QuadInt {
  BigInt p;
  BigInt q;

  QuadInt() = default;
  QuadInt(BigInt p_, BigInt q_) : p(std::move(p_)), q(std::move(q_)) {}

  bool is_zero() const { return p == 0 && q == 0; }

  /// Conjugate under sqrt5 -> -sqrt5, i.e. tau -> 1 - tau.
  QuadInt conjugate() const;

  /// Field norm (p + q tau)(p + q tau') = p^2 + pq - q^2.
  BigInt norm() const;

  /// Real value. Accurate to a few ulps even when p and q nearly cancel.
  double to_double() const;

  friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

QuadInt operator+(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x);
QuadInt operator*(const QuadInt& x, const QuadInt& y);

/// Exact sign (-1, 0, 1) of p + q*tau as a real number.
int sign(const QuadInt& x);

/// Exact real ordering of two elements of Z[tau].
std::strong_ordering cmp_quad(const QuadInt& u, const QuadInt& v);

/// re + im*i in Z[i].
struct GaussInt {
  BigInt re;
  BigInt im;

  GaussInt() = default;
  GaussInt(BigInt re_, BigInt im_) : re(std::move(re_)), im(std::move(im_)) {}

  GaussInt conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend bool operator==(const GaussInt&, const GaussInt&) = default;
};

GaussInt operator+(const GaussInt& x, const GaussInt& y);
GaussInt operator-(const GaussInt& x, const GaussInt& y);
GaussInt operator-(const GaussInt& x);
GaussInt operator*(const GaussInt& x, const GaussInt& y);

/// (a + b i) + (c + d i) tau, coordinates over the integral basis
/// {1, i, tau, i tau}.
///
/// The determinant of a composite codeword matrix is also written as
/// (R + S tau) + (T + V tau) i; in that naming R = a, S = c, T = b, V = d.
struct RingElem {
  BigInt a;
  BigInt b;
  BigInt c;
  BigInt d;

  RingElem() = default;
  RingElem(BigInt a_, BigInt b_, BigInt c_, BigInt d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
  explicit RingElem(const QuadInt& x) : a(x.p), b(0), c(x.q), d(0) {}
  RingElem(const GaussInt& z1, const GaussInt& z2)
      : a(z1.re), b(z1.im), c(z2.re), d(z2.im) {}

  static RingElem zero() { return {0, 0, 0, 0}; }
  static RingElem one() { return {1, 0, 0, 0}; }
  static RingElem i() { return {0, 1, 0, 0}; }
  static RingElem tau() { return {0, 0, 1, 0}; }
  static RingElem from_int(const BigInt& n) { return {n, 0, 0, 0}; }
  /// sqrt5 = 2 tau - 1.
  static RingElem sqrt5() { return {-1, 0, 2, 0}; }

  /// The Z[i] part and the tau-coefficient: x = z1 + z2 tau.
  GaussInt z1() const { return {a, b}; }
  GaussInt z2() const { return {c, d}; }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

  /// Largest absolute coordinate.
  BigInt max_abs_coord() const;

  friend bool operator==(const RingElem&, const RingElem&) = default;
};

RingElem operator+(const RingElem& x, const RingElem& y);
RingElem operator-(const RingElem& x, const RingElem& y);
RingElem operator-(const RingElem& x);
RingElem operator*(const RingElem& x, const RingElem& y);
RingElem operator*(const BigInt& k, const RingElem& x);

RingElem add(const RingElem& x, const RingElem& y);
RingElem mul(const RingElem& x, const RingElem& y);
RingElem pow(RingElem x, unsigned e);

/// Lexicographic order on (a, b, c, d).
std::strong_ordering lex_compare(const RingElem& x, const RingElem& y);

/// Elements of Gal(E/Q), the Klein four-group.
/// rho: i -> -i (complex conjugation); sigma: sqrt5 -> -sqrt5; mu = sigma rho.
enum class GaloisMap { identity, rho, sigma, mu };

RingElem apply_galois(GaloisMap g, const RingElem& x);
GaloisMap compose(GaloisMap outer, GaloisMap inner);

inline RingElem sigma(const RingElem& x) { return apply_galois(GaloisMap::sigma, x); }
inline RingElem rho(const RingElem& x) { return apply_galois(GaloisMap::rho, x); }
inline RingElem mu(const RingElem& x) { return apply_galois(GaloisMap::mu, x); }

/// |x|^2 = x * rho(x), which is fixed by rho and so lies in Z[tau].
QuadInt abs_squared(const RingElem& x);

/// Double-precision complex value. Advisory only: used for pruning and
/// diagnostics, never as the sole basis of a returned result.
std::complex<double> to_complex(const RingElem& x);

// Text forms: "a+bi+cτ+diτ" and "p+qτ" with explicit signs. The parsers also
// accept 't' for τ, terms in any order, omitted terms and omitted unit
// coefficients ("1-i+τ").
std::string to_string(const RingElem& x);
std::string to_string(const QuadInt& x);
RingElem parse_ring_elem(std::string_view text);
QuadInt parse_quad_int(std::string_view text);

/// Dense univariate polynomial over Z[i, tau]; coeffs[k] multiplies x^k.
class RingPoly {
 public:
  RingPoly() = default;
  explicit RingPoly(std::vector<RingElem> coeffs);
  RingPoly(std::initializer_list<RingElem> coeffs);

  /// Polynomial with small rational-integer coefficients, lowest degree first.
  static RingPoly from_ints(std::initializer_list<long> coeffs);
  /// c * x^k.
  static RingPoly monomial(const RingElem& c, unsigned k);

  const std::vector<RingElem>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  RingElem eval(const RingElem& x) const;

  friend bool operator==(const RingPoly&, const RingPoly&) = default;

 private:
  void normalize();
  std::vector<RingElem> coeffs_;
};

RingPoly operator+(const RingPoly& f, const RingPoly& g);
RingPoly operator-(const RingPoly& f, const RingPoly& g);
RingPoly operator*(const RingPoly& f, const RingPoly& g);

inline RingPoly poly_mul(const RingPoly& f, const RingPoly& g) { return f * g; }
inline RingElem poly_eval(const RingPoly& f, const RingElem& x) { return f.eval(x); }

std::string to_string(const RingPoly& f);

}  // namespace decaylab
