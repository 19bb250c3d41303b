#include <doctest.h>

#include <random>

#include "decaylab/codes.hpp"
#include "oracles.hpp"

using namespace decaylab;

namespace {

RingElem random_elem(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  return {dist(rng), dist(rng), dist(rng), dist(rng)};
}

const RingElem kUnits[] = {RingElem::one(), RingElem::i(), RingElem::from_int(-1), -RingElem::i()};

}  // namespace

TEST_CASE("determinant of the composite matrix") {
  const RingElem one = RingElem::one();
  // det(1, 1) = 1 - i.
  CHECK(bb_determinant(one, one) == RingElem(1, -1, 0, 0));
  CHECK(det_abs_squared(one, one) == QuadInt{2, 0});

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const RingElem x1 = random_elem(rng, 100);
    const RingElem x2 = random_elem(rng, 100);
    CHECK(CompositeMatrix(x1, x2).determinant() == bb_determinant(x1, x2));
    const auto m = CompositeMatrix(x1, x2).entries();
    CHECK(m[1][0] == RingElem::i() * x2);
    CHECK(m[0][1] == sigma(x1));
  }
}

TEST_CASE("matches the small-integer reference") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    const RingElem x1 = random_elem(rng, 30);
    const RingElem x2 = random_elem(rng, 30);
    const oracle::Small s1{x1.a.get_si(), x1.b.get_si(), x1.c.get_si(), x1.d.get_si()};
    const oracle::Small s2{x2.a.get_si(), x2.b.get_si(), x2.c.get_si(), x2.d.get_si()};
    const oracle::Small det =
        oracle::sub(oracle::mul(s1, oracle::galois_sigma(s2)),
                    oracle::mul(oracle::mul({0, 1, 0, 0}, oracle::galois_sigma(s1)), s2));
    const oracle::Tau n = oracle::norm_sq(det);
    CHECK(det_abs_squared(x1, x2) == QuadInt{n.p, n.q});
  }
}

TEST_CASE("|det|^2 is invariant under units on either user") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const RingElem x1 = random_elem(rng, 50);
    const RingElem x2 = random_elem(rng, 50);
    const QuadInt base = det_abs_squared(x1, x2);
    for (const RingElem& u : kUnits) {
      CHECK(det_abs_squared(u * x1, x2) == base);
      CHECK(det_abs_squared(x1, u * x2) == base);
    }
  }
}

TEST_CASE("determinant is bilinear") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<long> k(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    const RingElem x = random_elem(rng, 40), y = random_elem(rng, 40), z = random_elem(rng, 40);
    const BigInt s = k(rng), t = k(rng);
    CHECK(bb_determinant(s * x + t * y, z) == s * bb_determinant(x, z) + t * bb_determinant(y, z));
    CHECK(bb_determinant(z, s * x + t * y) == s * bb_determinant(z, x) + t * bb_determinant(z, y));
  }
}

TEST_CASE("RSTV naming") {
  const DetCoefficients c = det_coefficients(RingElem(1, 2, 3, 4));
  CHECK(c.R == 1);
  CHECK(c.S == 3);
  CHECK(c.T == 2);
  CHECK(c.V == 4);
}

TEST_CASE("rank criterion holds exhaustively on [-2,2]^4 and the S,V bound is respected") {
  const CoefficientBound bound = coefficient_bound();
  CHECK(bound.k1 > 0);
  const BigInt limit = bound.k1 * 2 * 2;
  const auto box = oracle::box(2);
  long failures = 0;
  BigInt max_s = 0, max_v = 0;
  for (const auto& u : box) {
    const RingElem x1{u[0], u[1], u[2], u[3]};
    for (const auto& v : box) {
      const RingElem x2{v[0], v[1], v[2], v[3]};
      const RingElem det = bb_determinant(x1, x2);
      if (det.is_zero()) ++failures;
      const DetCoefficients c = det_coefficients(det);
      if (abs(c.S) > max_s) max_s = abs(c.S);
      if (abs(c.V) > max_v) max_v = abs(c.V);
    }
  }
  CHECK(failures == 0);
  CHECK(max_s <= limit);
  CHECK(max_v <= limit);
}

TEST_CASE("a norm twist breaks the rank criterion") {
  CodeConfig cfg;
  cfg.gamma = RingElem::one();
  CHECK_FALSE(rank_criterion_check(RingElem::one(), RingElem::one(), cfg));
  CHECK(rank_criterion_check(RingElem::one(), RingElem::one()));
  CHECK(rank_criterion_check(RingElem::zero(), RingElem::one(), cfg));
}

TEST_CASE("coefficient table reproduces the determinant") {
  const CoefficientBound bound = coefficient_bound();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const RingElem x1 = random_elem(rng, 20), x2 = random_elem(rng, 20);
    const BigInt u1[] = {x1.a, x1.b, x1.c, x1.d};
    const BigInt u2[] = {x2.a, x2.b, x2.c, x2.d};
    BigInt coords[4];
    for (int k = 0; k < 4; ++k) {
      coords[k] = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) coords[k] += bound.table[k][i][j] * u1[i] * u2[j];
    }
    CHECK(RingElem(coords[0], coords[1], coords[2], coords[3]) == bb_determinant(x1, x2));
  }
}
