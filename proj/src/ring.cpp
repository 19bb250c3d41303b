#include "decaylab/ring.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace decaylab {

namespace {

constexpr double kSqrt5 = 2.2360679774997897;

double to_double(const BigInt& x) { return x.get_d(); }

// num / den without overflowing when num is far outside double range.
double scaled_ratio(const BigInt& num, double den) {
  if (num == 0) return 0.0;
  long num_exp = 0;
  const double num_mant = mpz_get_d_2exp(&num_exp, num.get_mpz_t());
  int den_exp = 0;
  const double den_mant = std::frexp(den, &den_exp);
  return std::ldexp(num_mant / den_mant, static_cast<int>(num_exp - den_exp));
}

}  // namespace

// ---------------------------------------------------------------- QuadInt

QuadInt QuadInt::conjugate() const { return {p + q, -q}; }

BigInt QuadInt::norm() const { return p * p + p * q - q * q; }

double QuadInt::to_double() const {
  // p + q tau = (s + q sqrt5) / 2 with s = 2p + q.
  const BigInt s = 2 * p + q;
  const int ss = sgn(s);
  const int sq = sgn(q);
  if (ss * sq >= 0) {
    return (decaylab::to_double(s) + decaylab::to_double(q) * kSqrt5) / 2.0;
  }
  // Opposite signs: s + q sqrt5 = (s^2 - 5 q^2) / (s - q sqrt5), and the
  // denominator has no cancellation.
  const BigInt num = s * s - 5 * q * q;
  const double den = decaylab::to_double(s) - decaylab::to_double(q) * kSqrt5;
  return scaled_ratio(num, den) / 2.0;
}

QuadInt operator+(const QuadInt& x, const QuadInt& y) { return {x.p + y.p, x.q + y.q}; }
QuadInt operator-(const QuadInt& x, const QuadInt& y) { return {x.p - y.p, x.q - y.q}; }
QuadInt operator-(const QuadInt& x) { return {-x.p, -x.q}; }

QuadInt operator*(const QuadInt& x, const QuadInt& y) {
  // tau^2 = tau + 1
  const BigInt qq = x.q * y.q;
  return {x.p * y.p + qq, x.p * y.q + x.q * y.p + qq};
}

int sign(const QuadInt& x) {
  const BigInt s = 2 * x.p + x.q;
  const int ss = sgn(s);
  const int sq = sgn(x.q);
  if (ss >= 0 && sq >= 0) return (ss == 0 && sq == 0) ? 0 : 1;
  if (ss <= 0 && sq <= 0) return -1;
  // Opposite strict signs; sqrt5 is irrational so s^2 != 5 q^2.
  const BigInt lhs = s * s;
  const BigInt rhs = 5 * x.q * x.q;
  if (sq > 0) return lhs < rhs ? 1 : -1;  // s < 0 < q
  return lhs > rhs ? 1 : -1;              // q < 0 < s
}

std::strong_ordering cmp_quad(const QuadInt& u, const QuadInt& v) {
  const int s = sign(u - v);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// --------------------------------------------------------------- GaussInt

GaussInt operator+(const GaussInt& x, const GaussInt& y) { return {x.re + y.re, x.im + y.im}; }
GaussInt operator-(const GaussInt& x, const GaussInt& y) { return {x.re - y.re, x.im - y.im}; }
GaussInt operator-(const GaussInt& x) { return {-x.re, -x.im}; }

GaussInt operator*(const GaussInt& x, const GaussInt& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

// --------------------------------------------------------------- RingElem

BigInt RingElem::max_abs_coord() const {
  BigInt m = abs(a);
  for (const BigInt* v : {&b, &c, &d}) {
    BigInt t = abs(*v);
    if (t > m) m = std::move(t);
  }
  return m;
}

RingElem operator+(const RingElem& x, const RingElem& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
}
RingElem operator-(const RingElem& x, const RingElem& y) {
  return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}
RingElem operator-(const RingElem& x) { return {-x.a, -x.b, -x.c, -x.d}; }

RingElem operator*(const RingElem& x, const RingElem& y) {
  // (z1 + z2 t)(w1 + w2 t) = (z1 w1 + z2 w2) + (z1 w2 + z2 w1 + z2 w2) t
  const GaussInt z1 = x.z1(), z2 = x.z2(), w1 = y.z1(), w2 = y.z2();
  const GaussInt hi = z2 * w2;
  return RingElem(z1 * w1 + hi, z1 * w2 + z2 * w1 + hi);
}

RingElem operator*(const BigInt& k, const RingElem& x) {
  return {k * x.a, k * x.b, k * x.c, k * x.d};
}

RingElem add(const RingElem& x, const RingElem& y) { return x + y; }
RingElem mul(const RingElem& x, const RingElem& y) { return x * y; }

RingElem pow(RingElem x, unsigned e) {
  RingElem r = RingElem::one();
  while (e != 0) {
    if (e & 1u) r = r * x;
    e >>= 1;
    if (e != 0) x = x * x;
  }
  return r;
}

std::strong_ordering lex_compare(const RingElem& x, const RingElem& y) {
  for (auto [u, v] : {std::pair{&x.a, &y.a}, {&x.b, &y.b}, {&x.c, &y.c}, {&x.d, &y.d}}) {
    if (*u < *v) return std::strong_ordering::less;
    if (*u > *v) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

RingElem apply_galois(GaloisMap g, const RingElem& x) {
  switch (g) {
    case GaloisMap::identity:
      return x;
    case GaloisMap::rho:
      return {x.a, -x.b, x.c, -x.d};
    case GaloisMap::sigma:
      // z1 + z2 tau -> z1 + z2 (1 - tau)
      return {x.a + x.c, x.b + x.d, -x.c, -x.d};
    case GaloisMap::mu:
      return {x.a + x.c, -(x.b + x.d), -x.c, x.d};
  }
  throw std::logic_error("unknown Galois map");
}

GaloisMap compose(GaloisMap outer, GaloisMap inner) {
  // Klein four-group: encode as bit pairs (rho bit, sigma bit) and xor.
  auto bits = [](GaloisMap g) {
    switch (g) {
      case GaloisMap::identity: return 0;
      case GaloisMap::rho: return 1;
      case GaloisMap::sigma: return 2;
      case GaloisMap::mu: return 3;
    }
    return 0;
  };
  switch (bits(outer) ^ bits(inner)) {
    case 1: return GaloisMap::rho;
    case 2: return GaloisMap::sigma;
    case 3: return GaloisMap::mu;
    default: return GaloisMap::identity;
  }
}

QuadInt abs_squared(const RingElem& x) {
  const RingElem n = x * rho(x);
  if (n.b != 0 || n.d != 0) throw std::logic_error("abs_squared: product not real");
  return {n.a, n.c};
}

std::complex<double> to_complex(const RingElem& x) {
  return {to_double(x.a) + to_double(x.c) * kTau, to_double(x.b) + to_double(x.d) * kTau};
}

// ------------------------------------------------------------- text forms

namespace {

void append_signed(std::string& out, const BigInt& v, const char* suffix, bool first) {
  if (!first && v >= 0) out += '+';
  out += v.get_str();
  out += suffix;
}

enum class Unit { one, i, tau, itau };

constexpr std::string_view kTauUtf8 = "\xCF\x84";

// Parses a sum of signed terms "[+-][digits][unit]". Calls emit(unit, value).
template <typename Emit>
void parse_terms(std::string_view text, Emit emit) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw std::invalid_argument("empty ring element");

  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (!first) {
      throw std::invalid_argument("expected sign in '" + std::string(text) + "'");
    }
    first = false;

    const std::size_t digits_begin = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    const bool has_digits = pos > digits_begin;
    BigInt value = has_digits ? BigInt(s.substr(digits_begin, pos - digits_begin)) : BigInt(1);
    if (negative) value = -value;

    auto starts = [&](std::string_view tok) { return std::string_view(s).substr(pos, tok.size()) == tok; };
    Unit unit = Unit::one;
    bool has_unit = false;
    if (starts("i")) {
      ++pos;
      has_unit = true;
      unit = Unit::i;
      if (starts(kTauUtf8)) {
        pos += kTauUtf8.size();
        unit = Unit::itau;
      } else if (starts("t")) {
        ++pos;
        unit = Unit::itau;
      }
    } else if (starts(kTauUtf8) || starts("t")) {
      pos += starts("t") ? 1 : kTauUtf8.size();
      has_unit = true;
      unit = Unit::tau;
    }
    if (!has_digits && !has_unit) {
      throw std::invalid_argument("malformed term in '" + std::string(text) + "'");
    }
    emit(unit, std::move(value));
  }
}

}  // namespace

std::string to_string(const RingElem& x) {
  std::string out;
  append_signed(out, x.a, "", true);
  append_signed(out, x.b, "i", false);
  append_signed(out, x.c, "\xCF\x84", false);
  append_signed(out, x.d, "i\xCF\x84", false);
  return out;
}

std::string to_string(const QuadInt& x) {
  std::string out;
  append_signed(out, x.p, "", true);
  append_signed(out, x.q, "\xCF\x84", false);
  return out;
}

RingElem parse_ring_elem(std::string_view text) {
  RingElem x = RingElem::zero();
  parse_terms(text, [&](Unit u, BigInt v) {
    switch (u) {
      case Unit::one: x.a += v; break;
      case Unit::i: x.b += v; break;
      case Unit::tau: x.c += v; break;
      case Unit::itau: x.d += v; break;
    }
  });
  return x;
}

QuadInt parse_quad_int(std::string_view text) {
  QuadInt x{0, 0};
  parse_terms(text, [&](Unit u, BigInt v) {
    switch (u) {
      case Unit::one: x.p += v; break;
      case Unit::tau: x.q += v; break;
      default: throw std::invalid_argument("imaginary term in Z[tau] value '" + std::string(text) + "'");
    }
  });
  return x;
}

// --------------------------------------------------------------- RingPoly

RingPoly::RingPoly(std::vector<RingElem> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

RingPoly::RingPoly(std::initializer_list<RingElem> coeffs) : coeffs_(coeffs) { normalize(); }

RingPoly RingPoly::from_ints(std::initializer_list<long> coeffs) {
  std::vector<RingElem> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.push_back(RingElem::from_int(c));
  return RingPoly(std::move(v));
}

RingPoly RingPoly::monomial(const RingElem& c, unsigned k) {
  std::vector<RingElem> v(k + 1, RingElem::zero());
  v[k] = c;
  return RingPoly(std::move(v));
}

void RingPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RingElem RingPoly::eval(const RingElem& x) const {
  RingElem acc = RingElem::zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RingPoly operator+(const RingPoly& f, const RingPoly& g) {
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<RingElem> out(std::max(a.size(), b.size()), RingElem::zero());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = out[k] + a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] = out[k] + b[k];
  return RingPoly(std::move(out));
}

RingPoly operator-(const RingPoly& f, const RingPoly& g) {
  std::vector<RingElem> neg;
  for (const auto& c : g.coeffs()) neg.push_back(-c);
  return f + RingPoly(std::move(neg));
}

RingPoly operator*(const RingPoly& f, const RingPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<RingElem> out(a.size() + b.size() - 1, RingElem::zero());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return RingPoly(std::move(out));
}

std::string to_string(const RingPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  const auto& c = f.coeffs();
  for (int k = f.degree(); k >= 0; --k) {
    if (c[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c[k]) + ")";
    if (k > 0) out += "x^" + std::to_string(k);
  }
  return out;
}

}  // namespace decaylab
