#include "decaylab/bounds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace decaylab {

double approximation_quality(const BigInt& h, const BigInt& k) {
  if (k <= 0) throw std::invalid_argument("approximation quality needs k > 0");
  const double kd = k.get_d();
  double dist;
  if (h <= 0) {
    dist = kd * kTau - h.get_d();
  } else {
    // (k tau - h)(k tau' - h) = h^2 - hk - k^2 with tau' = 1 - tau
    const BigInt norm = h * h - h * k - k * k;
    dist = std::abs(norm.get_d()) / (h.get_d() + kd * (kTau - 1.0));
  }
  return kd * dist;
}

std::vector<Convergent> tau_convergents(const BigInt& k_max) {
  if (k_max < 1) throw std::invalid_argument("tau_convergents needs k_max >= 1");
  std::vector<Convergent> out;
  BigInt h = 2;
  BigInt k = 1;
  while (k <= k_max) {
    out.push_back({h, k, approximation_quality(h, k)});
    BigInt next = h + k;
    k = std::move(h);
    h = std::move(next);
  }
  return out;
}

double liouville_effective_constant() { return 1.0 / (1.0 + std::sqrt(5.0)); }

double golden_hurwitz_constant() { return 1.0 / std::sqrt(5.0); }

ExponentFit fit_exponent(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw std::invalid_argument("exponent fit needs at least 2 points");
  double sx = 0, sy = 0;
  for (const auto& [n, d] : points) {
    if (!(n > 0)) throw std::invalid_argument("exponent fit needs N > 0");
    if (!(d > 0)) throw std::invalid_argument("exponent fit needs D > 0");
    sx += std::log(n);
    sy += std::log(d);
  }
  const double count = static_cast<double>(points.size());
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0, sxy = 0;
  for (const auto& [n, d] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(d) - my);
  }
  if (sxx == 0) throw std::invalid_argument("exponent fit needs at least two distinct N");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double sse = 0;
  for (const auto& [n, d] : points) {
    const double r = std::log(d) - (intercept + slope * std::log(n));
    sse += r * r;
  }
  return {-slope, std::exp(intercept), std::sqrt(sse / count), static_cast<int>(points.size())};
}

std::vector<std::pair<double, double>> decay_points(std::span<const DecayRecord> records) {
  std::vector<std::pair<double, double>> out;
  out.reserve(records.size());
  for (const DecayRecord& r : records) {
    out.emplace_back(static_cast<double>(std::max(r.n1, r.n2)), r.decay_value());
  }
  return out;
}

BoundsReport verify_bounds(std::span<const DecayRecord> records,
                           std::span<const UnbalancedSplit> witnesses) {
  if (records.empty()) throw std::invalid_argument("verify_bounds needs at least one record");
  BoundsReport rep;
  rep.all_positive = true;
  for (std::size_t idx = 0; idx < records.size(); ++idx) {
    const DecayRecord& r = records[idx];
    if (sign(r.min_detsq) <= 0) rep.all_positive = false;
    const double d = r.decay_value();
    const double k = static_cast<double>(r.n1) * r.n2 * d;
    if (idx == 0 || k < rep.k_emp) {
      rep.k_emp = k;
      rep.k_emp_index = idx;
    }
    if (r.n2 == 1) {
      const double c = static_cast<double>(r.n1) * d;
      if (!rep.c_emp || c > *rep.c_emp) {
        rep.c_emp = c;
        rep.c_emp_index = idx;
      }
    }
  }
  for (const UnbalancedSplit& w : witnesses) {
    WitnessPoint p;
    p.n = w.n;
    p.size1 = w.size1.get_d();
    p.size2 = w.size2.get_d();
    p.abs_det = std::sqrt(w.detsq.to_double());
    p.scaled = p.size1 * p.size2 * p.abs_det;
    p.exponent = -std::log(p.abs_det) / std::log(std::max(p.size1, p.size2));
    rep.witnesses.push_back(p);
  }
  return rep;
}

// ----------------------------------------------------------------- DMT

namespace {

BigInt floor_of(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

void check_unit_interval(const Rational& r, const char* what) {
  if (r < 0 || r > 1) {
    throw std::out_of_range(std::string(what) + ": multiplexing gain must lie in [0, 1], got " +
                            to_string(r));
  }
}

}  // namespace

Rational dmt_point_to_point(int p, int q, const Rational& x) {
  if (p < 1 || q < 1) throw std::invalid_argument("antenna counts must be positive");
  const int top = std::min(p, q);
  if (x < 0 || x > top) {
    throw std::out_of_range("DMT argument must lie in [0, " + std::to_string(top) + "], got " +
                            to_string(x));
  }
  auto corner = [&](long k) { return Rational((p - k) * (q - k)); };
  long k = floor_of(x).get_si();
  if (k == top) k = top - 1;
  const Rational lo = corner(k);
  const Rational hi = corner(k + 1);
  Rational out = lo + (x - k) * (hi - lo);
  out.canonicalize();
  return out;
}

Rational dmt_rS(const Rational& r) {
  check_unit_interval(r, "r_S");
  Rational out = (r <= Rational(1, 2)) ? Rational((2 + 2 * r) / 3) : Rational(2 * r);
  out.canonicalize();
  return out;
}

DmtResult dmt_optimality(const DmtQuery& q) {
  check_unit_interval(q.r, "dmt_optimality");
  const Rational delta = q.mode == DeltaMode::theoretical_2r ? Rational(2 * q.r) : q.empirical_delta;
  DmtResult res;
  res.lhs = 2 * q.r + delta;
  res.lhs.canonicalize();
  res.rhs = dmt_rS(q.r);
  res.optimal = res.lhs <= res.rhs;
  return res;
}

std::optional<Rational> dmt_threshold(DeltaMode mode, const Rational& empirical_delta) {
  auto slack = [&](const Rational& r) {
    const DmtResult res = dmt_optimality({r, mode, empirical_delta});
    return Rational(res.lhs - res.rhs);
  };
  const Rational breaks[] = {Rational(0), Rational(1, 2), Rational(1)};
  if (slack(breaks[0]) > 0) return std::nullopt;
  // lhs - rhs is linear on each piece of r_S.
  for (int piece = 0; piece < 2; ++piece) {
    const Rational& lo = breaks[piece];
    const Rational& hi = breaks[piece + 1];
    const Rational f_lo = slack(lo);
    const Rational f_hi = slack(hi);
    if (f_hi <= 0) continue;
    Rational root = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    root.canonicalize();
    return root;
  }
  return Rational(1);
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto to_big = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return BigInt(t);
  };
  const auto slash = s.find('/');
  const auto dot = s.find('.');
  Rational out;
  if (slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw std::invalid_argument("malformed rational '" + s + "'");
    const BigInt d = to_big(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    out = Rational(to_big(num), d);
  } else if (dot != std::string::npos) {
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    const bool whole_ok = whole.empty() || whole == "-" || whole == "+" || is_int(whole);
    if (!whole_ok || frac.empty() || !is_int(frac) || frac[0] == '-' || frac[0] == '+') {
      throw std::invalid_argument("malformed rational '" + s + "'");
    }
    const bool negative = !whole.empty() && whole[0] == '-';
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const std::string digits = (whole.empty() || whole == "-" || whole == "+" ? std::string("0") : whole);
    BigInt w = abs(to_big(digits));
    out = Rational(w * scale + BigInt(frac), scale);
    if (negative) out = -out;
  } else {
    if (!is_int(s)) throw std::invalid_argument("malformed rational '" + s + "'");
    out = Rational(to_big(s));
  }
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace decaylab
