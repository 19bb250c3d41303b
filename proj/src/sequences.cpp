#include "decaylab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "decaylab/codes.hpp"

namespace decaylab {

namespace {

double log_big(const BigInt& x) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(std::abs(m)) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace

AlphaPower alpha_power(unsigned n) {
  AlphaPower p{0, 1, 0};
  while (p.n < n) {
    BigInt a = 2 * p.a + 5 * p.b;
    BigInt b = p.a + 2 * p.b;
    p.a = std::move(a);
    p.b = std::move(b);
    ++p.n;
  }
  return p;
}

RingElem z_element(unsigned n) {
  if (n == 0) throw std::invalid_argument("z_n needs n >= 1");
  const AlphaPower p = alpha_power(n);
  // i sqrt5 = -i + 2 i tau
  return {p.a, -p.b, 0, 2 * p.b};
}

RingElem m_factor(int j, unsigned n) {
  if (j < 1 || j > 4) throw std::invalid_argument("m_j(n) needs j in 1..4, got " + std::to_string(j));
  if (n == 0) throw std::invalid_argument("m_j(n) needs n >= 1");
  const BigInt b = alpha_power(2 * n).b;
  // u - 1/u = 2 b_{2n} sqrt5 = -2b + 4b tau
  const RingElem base{-2 * b, 0, 4 * b, 0};
  switch (j) {
    case 1: return base + RingElem{0, 1, 0, -1};  // + i(1 - tau)
    case 2: return base - RingElem{0, 1, 0, -1};
    case 3: return base + RingElem{0, 0, 0, 1};   // + i tau
    default: return base - RingElem{0, 0, 0, 1};
  }
}

RingPoly cyclotomic_factor(int j) {
  const RingElem minus_one = RingElem::from_int(-1);
  const RingElem one = RingElem::one();
  switch (j) {
    case 1: return {minus_one, RingElem{0, 1, 0, -1}, one};
    case 2: return {minus_one, RingElem{0, -1, 0, 1}, one};
    case 3: return {minus_one, RingElem{0, 0, 0, 1}, one};
    case 4: return {minus_one, RingElem{0, 0, 0, -1}, one};
    default: throw std::invalid_argument("p_j needs j in 1..4, got " + std::to_string(j));
  }
}

RingPoly phi20() { return RingPoly::from_ints({1, 0, -1, 0, 1, 0, -1, 0, 1}); }

Z5nFactorization factor_z5n(unsigned n) {
  if (n == 0) throw std::invalid_argument("factor_z5n needs n >= 1");
  const int j = (n % 2 == 1) ? 2 : 1;
  return {n, j, z_element(n), m_factor(j, n), m_factor(j + 2, n)};
}

std::vector<RingElem> z_atoms(unsigned n) {
  if (n == 0) throw std::invalid_argument("z_atoms needs n >= 1");
  if (n % 5 != 0) return {z_element(n)};
  const Z5nFactorization f = factor_z5n(n / 5);
  std::vector<RingElem> atoms = z_atoms(n / 5);
  atoms.push_back(f.m_low);
  atoms.push_back(f.m_high);
  return atoms;
}

Split balanced_split(const std::vector<RingElem>& atoms) {
  if (atoms.empty() || atoms.size() > 20) {
    throw std::invalid_argument("balanced_split needs 1..20 atoms");
  }
  Split best;
  bool have = false;
  const unsigned count = 1u << atoms.size();
  for (unsigned mask = 0; mask < count; ++mask) {
    RingElem p1 = RingElem::one();
    RingElem p2 = RingElem::one();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (mask & (1u << k)) {
        p1 = p1 * atoms[k];
      } else {
        p2 = p2 * atoms[k];
      }
    }
    RingElem x2 = sigma(p2);
    BigInt size = std::max(p1.max_abs_coord(), x2.max_abs_coord());
    if (!have || size < best.size) {
      best = {std::move(p1), std::move(x2), std::move(size), mask};
      have = true;
    }
  }
  return best;
}

double log_abs_det(unsigned n) {
  return 0.5 * std::log(2.0) + static_cast<double>(n) * std::log(std::sqrt(5.0) - 2.0);
}

QuadInt sequence_detsq(unsigned n) {
  const AlphaPower p = alpha_power(n);
  // a - b sqrt5 = (a + b) - 2b tau
  const RingElem small{p.a + p.b, 0, -2 * p.b, 0};
  return abs_squared(small * RingElem{1, -1, 0, 0});
}

SequenceRecord table_row(unsigned n) {
  if (std::find(kTableIndices.begin(), kTableIndices.end(), n) == kTableIndices.end()) {
    throw std::invalid_argument("table rows exist for n in {5,10,15,20,25}, got " + std::to_string(n));
  }
  SequenceRecord rec;
  rec.n = n;
  const AlphaPower p = alpha_power(n);
  rec.a_n = p.a;
  rec.b_n = p.b;
  rec.z = z_element(n);
  rec.factors = z_atoms(n);
  Split s = balanced_split(rec.factors);
  rec.x1 = std::move(s.x1);
  rec.x2 = std::move(s.x2);
  rec.m = std::move(s.size);
  rec.detsq = det_abs_squared(rec.x1, rec.x2);
  rec.delta_estimate = -log_abs_det(n) / log_big(rec.m);
  return rec;
}

std::vector<SequenceRecord> table_rows() {
  std::vector<SequenceRecord> rows;
  for (unsigned n : kTableIndices) rows.push_back(table_row(n));
  return rows;
}

UnbalancedSplit unbalanced_split(unsigned n) {
  const Z5nFactorization f = factor_z5n(n);
  UnbalancedSplit pt;
  pt.n = n;
  pt.x1 = f.z * f.m_low;
  pt.x2 = sigma(f.m_high);
  pt.size1 = pt.x1.max_abs_coord();
  pt.size2 = pt.x2.max_abs_coord();
  pt.detsq = det_abs_squared(pt.x1, pt.x2);
  pt.log_size_ratio = log_big(pt.size1) / log_big(pt.size2);
  return pt;
}

std::vector<UnbalancedSplit> unbalanced_series(unsigned k_max) {
  if (k_max == 0) throw std::invalid_argument("unbalanced_series needs k_max >= 1");
  std::vector<UnbalancedSplit> out;
  for (unsigned n = 1; n <= k_max; ++n) out.push_back(unbalanced_split(n));
  return out;
}

}  // namespace decaylab
