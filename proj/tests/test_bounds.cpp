#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "decaylab/bounds.hpp"
#include "decaylab/io.hpp"
#include "oracles.hpp"

using namespace decaylab;

TEST_CASE("convergents are Fibonacci ratios") {
  const auto conv = tau_convergents(BigInt(1'000'000));
  const auto ref = oracle::fibonacci_pairs(BigInt(1'000'000));
  REQUIRE(conv.size() == ref.size());
  CHECK(conv.size() == 29);
  CHECK(conv[0].h == 2);
  CHECK(conv[0].k == 1);
  CHECK(conv[2].h == 5);
  CHECK(conv[2].k == 3);
  for (std::size_t k = 0; k < conv.size(); ++k) {
    CHECK(conv[k].h == ref[k].first);
    CHECK(conv[k].k == ref[k].second);
    const long double q = oracle::fib_quality(ref[k].first.get_d(), ref[k].second.get_d());
    // The reference rounds k tau to a long double, about 2e-7 relative near k = 1e6.
    CHECK(conv[k].quality == doctest::Approx(static_cast<double>(q)).epsilon(1e-6));
    CHECK(conv[k].quality > liouville_effective_constant());
    CHECK(conv[k].quality < 1.0);
  }
  CHECK(conv.back().quality == doctest::Approx(golden_hurwitz_constant()).epsilon(1e-9));
  CHECK(conv[0].quality == doctest::Approx(0.381966).epsilon(1e-5));
  CHECK_THROWS_AS(tau_convergents(BigInt(0)), std::invalid_argument);
}

TEST_CASE("quality stays accurate for huge convergents") {
  const auto conv = tau_convergents(BigInt("1" + std::string(60, '0')));
  CHECK(conv.size() > 280);
  CHECK(conv.back().quality == doctest::Approx(golden_hurwitz_constant()).epsilon(1e-12));
  CHECK(approximation_quality(BigInt(-3), BigInt(1)) == doctest::Approx(kTau + 3));
  CHECK_THROWS_AS(approximation_quality(BigInt(1), BigInt(0)), std::invalid_argument);
}

TEST_CASE("no rational beats the Liouville constant") {
  // Scan every k up to 2000 with the best h for it.
  const double c = liouville_effective_constant();
  CHECK(c == doctest::Approx(0.309017).epsilon(1e-6));
  for (long k = 1; k <= 2000; ++k) {
    const long h = std::lround(k * kTau);
    CHECK(approximation_quality(BigInt(h), BigInt(k)) > c);
  }
}

TEST_CASE("exponent fit recovers planted exponents") {
  for (double delta0 : {0.0, 1.0, 5.0 / 3.0, 2.0}) {
    std::vector<std::pair<double, double>> pts;
    for (int n = 1; n <= 12; ++n) pts.emplace_back(n, 3.5 * std::pow(n, -delta0));
    const ExponentFit fit = fit_exponent(pts);
    CHECK(fit.delta == doctest::Approx(delta0).epsilon(1e-9).scale(1.0));
    CHECK(fit.constant == doctest::Approx(3.5).epsilon(1e-9));
    CHECK(fit.residual < 1e-9);
    CHECK(fit.sample_count == 12);
  }

  std::ifstream in(std::string(DECAYLAB_TEST_DATA) + "/synthetic_invsq.csv");
  REQUIRE(in);
  const auto pts = read_points_csv(in);
  CHECK(pts.size() == 8);
  CHECK(fit_exponent(pts).delta == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("exponent fit rejects bad input") {
  const std::vector<std::pair<double, double>> one = {{1, 1}};
  CHECK_THROWS_AS(fit_exponent(one), std::invalid_argument);
  const std::vector<std::pair<double, double>> same_n = {{2, 1}, {2, 0.5}};
  CHECK_THROWS_AS(fit_exponent(same_n), std::invalid_argument);
  const std::vector<std::pair<double, double>> zero_d = {{1, 1}, {2, 0}};
  CHECK_THROWS_AS(fit_exponent(zero_d), std::invalid_argument);
}

TEST_CASE("bound report over search records") {
  std::vector<DecayRecord> recs = decay_series(5, SeriesMode::fixed_second);
  const auto eq = decay_series(2, SeriesMode::equal);
  recs.insert(recs.end(), eq.begin(), eq.end());
  const auto witnesses = unbalanced_series(3);
  const BoundsReport rep = verify_bounds(recs, witnesses);
  CHECK(rep.all_positive);
  CHECK(rep.k_emp > 0);
  REQUIRE(rep.c_emp.has_value());
  for (const DecayRecord& r : recs) {
    CHECK(r.n1 * r.n2 * r.decay_value() >= rep.k_emp);
    if (r.n2 == 1) CHECK(r.n1 * r.decay_value() <= *rep.c_emp);
  }
  // D(1,1) = sqrt(26 - 16 tau) is the smallest n1 n2 D in this set.
  CHECK(rep.k_emp == doctest::Approx(0.333850).epsilon(1e-5));
  CHECK(rep.witnesses.size() == 3);
  for (const WitnessPoint& w : rep.witnesses) CHECK(w.abs_det > 0);

  CHECK_THROWS_AS(verify_bounds(std::span<const DecayRecord>{}), std::invalid_argument);
}

TEST_CASE("point-to-point DMT") {
  CHECK(dmt_point_to_point(2, 2, 0) == 4);
  CHECK(dmt_point_to_point(2, 2, 1) == 1);
  CHECK(dmt_point_to_point(2, 2, 2) == 0);
  CHECK(dmt_point_to_point(2, 2, Rational(1, 2)) == Rational(5, 2));
  CHECK(dmt_point_to_point(1, 2, Rational(1, 2)) == 1);
  CHECK_THROWS_AS(dmt_point_to_point(2, 2, 3), std::out_of_range);

  Rational prev = dmt_point_to_point(2, 2, 0);
  for (int k = 1; k <= 100; ++k) {
    const Rational cur = dmt_point_to_point(2, 2, Rational(2 * k, 100));
    CHECK(cur <= prev);
    prev = cur;
  }
}

TEST_CASE("sum-rate curve and the optimality region") {
  CHECK(dmt_rS(0) == Rational(2, 3));
  CHECK(dmt_rS(Rational(1, 2)) == 1);
  CHECK(dmt_rS(1) == 2);
  CHECK_THROWS_AS(dmt_rS(Rational(3, 2)), std::out_of_range);

  const DmtResult at = dmt_optimality({Rational(1, 5)});
  CHECK(at.lhs == Rational(4, 5));
  CHECK(at.rhs == Rational(4, 5));
  CHECK(at.optimal);
  CHECK_FALSE(dmt_optimality({Rational(1, 5) + Rational(1, 1000000)}).optimal);

  // Theoretical delta = 2r: optimal exactly on [0, 1/5].
  for (int k = 0; k <= 100; ++k) {
    const Rational r(k, 100);
    CHECK(dmt_optimality({r}).optimal == (r <= Rational(1, 5)));
  }
  CHECK(dmt_threshold(DeltaMode::theoretical_2r) == Rational(1, 5));

  // delta = 0 gives 2r <= r_S(r) everywhere on [0, 1].
  CHECK(dmt_threshold(DeltaMode::empirical, 0) == Rational(1));
  // delta = 1: 2r + 1 <= (2 + 2r)/3 fails already at 0.
  CHECK_FALSE(dmt_threshold(DeltaMode::empirical, 1).has_value());
  const auto t = dmt_threshold(DeltaMode::empirical, Rational(1, 3));
  REQUIRE(t.has_value());
  CHECK(*t == Rational(1, 4));
  CHECK(dmt_optimality({*t, DeltaMode::empirical, Rational(1, 3)}).optimal);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/5") == Rational(1, 5));
  CHECK(parse_rational("2/10") == Rational(1, 5));
  CHECK(parse_rational("0.2") == Rational(1, 5));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("3") == 3);
  CHECK(to_string(Rational(4, 5)) == "4/5");
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1."), std::invalid_argument);
}
