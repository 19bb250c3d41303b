#include "decaylab/codes.hpp"

namespace decaylab {

std::strong_ordering lex_compare(const UserCoords& x, const UserCoords& y) {
  return lex_compare(RingElem(x.a, x.b, x.c, x.d), RingElem(y.a, y.b, y.c, y.d));
}

RingElem user_element(const UserCoords& u) { return {u.a, u.b, u.c, u.d}; }

std::array<std::array<RingElem, 2>, 2> CompositeMatrix::entries() const {
  return {{{x1, sigma(x1)}, {gamma * x2, sigma(x2)}}};
}

RingElem CompositeMatrix::determinant() const {
  const auto m = entries();
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

RingElem bb_determinant(const RingElem& x1, const RingElem& x2, const CodeConfig& cfg) {
  return x1 * sigma(x2) - cfg.gamma * sigma(x1) * x2;
}

QuadInt det_abs_squared(const RingElem& x1, const RingElem& x2, const CodeConfig& cfg) {
  return abs_squared(bb_determinant(x1, x2, cfg));
}

bool rank_criterion_check(const RingElem& x1, const RingElem& x2, const CodeConfig& cfg) {
  if (x1.is_zero() || x2.is_zero()) return true;
  return !bb_determinant(x1, x2, cfg).is_zero();
}

DetCoefficients det_coefficients(const RingElem& det) { return {det.a, det.c, det.b, det.d}; }

CoefficientBound coefficient_bound(const CodeConfig& cfg) {
  auto basis = [](int k) {
    RingElem e = RingElem::zero();
    BigInt* coords[] = {&e.a, &e.b, &e.c, &e.d};
    *coords[k] = 1;
    return e;
  };

  CoefficientBound out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const RingElem det = bb_determinant(basis(i), basis(j), cfg);
      out.table[0][i][j] = det.a;
      out.table[1][i][j] = det.b;
      out.table[2][i][j] = det.c;
      out.table[3][i][j] = det.d;
    }
  }
  out.k1 = 0;
  for (int k : {2, 3}) {  // S = c, V = d
    BigInt sum = 0;
    for (const auto& row : out.table[k])
      for (const auto& v : row) sum += abs(v);
    if (sum > out.k1) out.k1 = sum;
  }
  return out;
}

}  // namespace decaylab
