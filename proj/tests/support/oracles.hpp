#pragma once

// Reference computations for the test suites. Everything here is written
// from the definitions, with its own small-integer arithmetic where possible,
// and shares no code path with the pruned search.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "decaylab/ring.hpp"
#include "decaylab/sequences.hpp"

namespace oracle {

using i64 = std::int64_t;
using i128 = __int128;

/// x = (a + b i) + (c + d i) tau with machine integers.
struct Small {
  i64 a = 0, b = 0, c = 0, d = 0;
};

inline Small mul(const Small& x, const Small& y) {
  // Gaussian products first, then tau^2 = tau + 1.
  const i64 p_re = x.a * y.a - x.b * y.b, p_im = x.a * y.b + x.b * y.a;     // z1 w1
  const i64 q_re = x.c * y.c - x.d * y.d, q_im = x.c * y.d + x.d * y.c;     // z2 w2
  const i64 r_re = x.a * y.c - x.b * y.d + x.c * y.a - x.d * y.b;           // z1 w2 + z2 w1
  const i64 r_im = x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a;
  return {p_re + q_re, p_im + q_im, r_re + q_re, r_im + q_im};
}

inline Small sub(const Small& x, const Small& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }

/// sqrt5 -> -sqrt5 sends tau to 1 - tau.
inline Small galois_sigma(const Small& x) { return {x.a + x.c, x.b + x.d, -x.c, -x.d}; }

/// |x|^2 as p + q tau.
struct Tau {
  i64 p = 0, q = 0;
};

inline Tau norm_sq(const Small& x) {
  const Small y = mul(x, Small{x.a, -x.b, x.c, -x.d});
  return {y.a, y.c};
}

/// Sign of p + q tau, via 2(p + q tau) = (2p + q) + q sqrt5.
inline int sign(const Tau& t) {
  const i128 s = 2 * static_cast<i128>(t.p) + t.q;
  const i128 q = t.q;
  auto sg = [](i128 v) { return (v > 0) - (v < 0); };
  if (sg(s) == sg(q)) return sg(s);
  if (s == 0) return sg(q);
  if (q == 0) return sg(s);
  const i128 lhs = s * s, rhs = 5 * q * q;
  return lhs > rhs ? sg(s) : (lhs < rhs ? sg(q) : 0);
}

inline bool less(const Tau& x, const Tau& y) { return sign(Tau{x.p - y.p, x.q - y.q}) < 0; }

struct BruteResult {
  Tau detsq;
  std::array<i64, 4> w1{};
  std::array<i64, 4> w2{};
  std::uint64_t pairs = 0;
};

inline std::vector<std::array<i64, 4>> box(int n) {
  std::vector<std::array<i64, 4>> out;
  for (i64 a = -n; a <= n; ++a)
    for (i64 b = -n; b <= n; ++b)
      for (i64 c = -n; c <= n; ++c)
        for (i64 d = -n; d <= n; ++d)
          if (a || b || c || d) out.push_back({a, b, c, d});
  return out;
}

/// Minimum |x1 sigma(x2) - gamma sigma(x1) x2|^2 over every nonzero pair, no
/// symmetry reduction. The first minimizer in lex order is kept.
inline BruteResult brute_force_decay(int n1, int n2, Small gamma = {0, 1, 0, 0}) {
  const auto box1 = box(n1);
  const auto box2 = box(n2);
  BruteResult best;
  bool have = false;
  for (const auto& u : box1) {
    const Small x1{u[0], u[1], u[2], u[3]};
    const Small gs1 = mul(gamma, galois_sigma(x1));
    for (const auto& v : box2) {
      const Small x2{v[0], v[1], v[2], v[3]};
      const Tau t = norm_sq(sub(mul(x1, galois_sigma(x2)), mul(gs1, x2)));
      ++best.pairs;
      if (!have || less(t, best.detsq)) {
        best.detsq = t;
        best.w1 = u;
        best.w2 = v;
        have = true;
      }
    }
  }
  return best;
}

/// m_j(n) straight from the factor polynomial: sigma(alpha)^{2n} p_j(alpha^{2n}).
inline decaylab::RingElem m_from_polynomial(int j, unsigned n) {
  const decaylab::RingElem alpha{1, 0, 2, 0};  // 2 + sqrt5 = 1 + 2 tau
  const decaylab::RingElem u = decaylab::pow(alpha, 2 * n);
  const decaylab::RingElem s = decaylab::pow(decaylab::sigma(alpha), 2 * n);
  return s * decaylab::cyclotomic_factor(j).eval(u);
}

/// Consecutive Fibonacci numbers F_{k+1}, F_k with F_k <= k_max, starting at (2, 1).
inline std::vector<std::pair<decaylab::BigInt, decaylab::BigInt>> fibonacci_pairs(const decaylab::BigInt& k_max) {
  std::vector<std::pair<decaylab::BigInt, decaylab::BigInt>> out;
  decaylab::BigInt k = 1, h = 2;
  while (k <= k_max) {
    out.emplace_back(h, k);
    decaylab::BigInt next = h + k;
    k = h;
    h = next;
  }
  return out;
}

/// k |k tau - h| in long double. Direct subtraction, so the relative error
/// grows like k^2 * 1e-19.
inline long double fib_quality(long double h, long double k) {
  const long double tau = (1.0L + std::sqrt(5.0L)) / 2.0L;
  return k * std::fabs(k * tau - h);
}

}  // namespace oracle
