#include <doctest.h>

#include <set>

#include "decaylab/decay_search.hpp"
#include "oracles.hpp"

using namespace decaylab;

namespace {

std::array<oracle::i64, 4> coords(const UserCoords& u) {
  return {u.a.get_si(), u.b.get_si(), u.c.get_si(), u.d.get_si()};
}

void check_against_brute_force(int n1, int n2) {
  const oracle::BruteResult ref = oracle::brute_force_decay(n1, n2);
  const DecayRecord rec = decay(n1, n2);
  CHECK(rec.min_detsq == QuadInt{ref.detsq.p, ref.detsq.q});
  CHECK(coords(rec.witness1) == ref.w1);
  CHECK(coords(rec.witness2) == ref.w2);
  CHECK(det_abs_squared(user_element(rec.witness1), user_element(rec.witness2)) == rec.min_detsq);
}

}  // namespace

TEST_CASE("orbit representatives") {
  CHECK(enumerate_orbit_reps(1).size() == 20);
  CHECK(enumerate_orbit_reps(2).size() == 156);
  CHECK(enumerate_orbit_reps(3).size() == 600);
  CHECK(reduced_pair_count(2, 1) == 156 * 20);
  CHECK_THROWS_AS(enumerate_orbit_reps(0), std::invalid_argument);

  // Every nonzero point lies in exactly one orbit, and its representative
  // is the lex-smallest member.
  const auto reps = enumerate_orbit_reps(2);
  std::set<std::array<oracle::i64, 4>> seen;
  for (const UserCoords& r : reps) {
    UserCoords u = r;
    for (int k = 0; k < 4; ++k) {
      CHECK(seen.insert(coords(u)).second);
      if (k > 0) CHECK(lex_compare(r, u) < 0);
      u = times_i(u);
    }
    CHECK(u == r);
  }
  CHECK(seen.size() == 624);
  for (std::size_t k = 1; k < reps.size(); ++k) CHECK(lex_compare(reps[k - 1], reps[k]) < 0);
}

TEST_CASE("small boxes agree with brute force over all pairs") {
  check_against_brute_force(1, 1);
  check_against_brute_force(1, 2);
  check_against_brute_force(2, 1);
  check_against_brute_force(3, 1);
}

TEST_CASE("frozen values") {
  // Produced by the unreduced reference search; D(1,1)^2 = 26 - 16 tau.
  const DecayRecord r11 = decay(1, 1);
  CHECK(r11.min_detsq == QuadInt{26, -16});
  CHECK(r11.min_detsq_float == doctest::Approx(0.111456180001683).epsilon(1e-12));
  CHECK(r11.witness1 == UserCoords{-1, -1, 0, -1});
  CHECK(r11.witness2 == UserCoords{-1, -1, -1, 0});
  CHECK(r11.orbit_reduced_count == 400);
  CHECK(r11.visited_pairs == 400);

  CHECK(decay(2, 2).min_detsq == QuadInt{26, -16});
  CHECK(decay(3, 3).min_detsq == QuadInt{466, -288});
  CHECK(decay(4, 1).min_detsq == QuadInt{123, -76});
  CHECK(decay(8, 1).min_detsq == QuadInt{123, -76});
}

TEST_CASE("result does not depend on worker count or traversal order") {
  const DecayRecord base = decay(3, 2);
  for (unsigned workers : {2u, 3u, 8u}) {
    for (std::uint64_t seed : {1ULL, 99ULL}) {
      SearchOptions opts;
      opts.workers = workers;
      opts.shuffle_seed = seed;
      const DecayRecord r = decay(3, 2, {}, opts);
      CHECK(r.min_detsq == base.min_detsq);
      CHECK(r.witness1 == base.witness1);
      CHECK(r.witness2 == base.witness2);
      CHECK(r.visited_pairs == base.visited_pairs);
    }
  }
}

TEST_CASE("nested boxes never increase the minimum") {
  QuadInt prev = decay(1, 1).min_detsq;
  for (int n = 2; n <= 5; ++n) {
    const QuadInt cur = decay(n, 1).min_detsq;
    CHECK(cmp_quad(cur, prev) <= 0);
    prev = cur;
  }
  CHECK(cmp_quad(decay(3, 3).min_detsq, decay(3, 2).min_detsq) <= 0);
  CHECK(cmp_quad(decay(3, 2).min_detsq, decay(2, 2).min_detsq) <= 0);
}

TEST_CASE("pruning still confirms ties exactly") {
  const DecayRecord r = decay(4, 2);
  CHECK(r.exact_confirmations >= 1);
  CHECK(r.exact_confirmations < r.visited_pairs);
  CHECK(sign(r.min_detsq) > 0);
}

TEST_CASE("budget and argument checks") {
  CHECK_THROWS_AS(decay(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(decay(1, -3), std::invalid_argument);

  SearchOptions tight;
  tight.budget = 100;
  CHECK_THROWS_AS(decay(1, 1, {}, tight), BudgetExceeded);
  tight.override_budget = true;
  CHECK(decay(1, 1, {}, tight).min_detsq == QuadInt{26, -16});

  SearchOptions series_budget;
  series_budget.budget = 400;
  CHECK_THROWS_AS(decay_series(2, SeriesMode::equal, {}, series_budget), BudgetExceeded);
  CHECK_THROWS_AS(decay_series(0, SeriesMode::equal), std::invalid_argument);
}

TEST_CASE("series shapes") {
  const auto eq = decay_series(3, SeriesMode::equal);
  REQUIRE(eq.size() == 3);
  CHECK(eq[2].n1 == 3);
  CHECK(eq[2].n2 == 3);
  const auto fixed = decay_series(3, SeriesMode::fixed_second);
  CHECK(fixed[2].n1 == 3);
  CHECK(fixed[2].n2 == 1);
}

TEST_CASE("a norm twist collapses the minimum to zero") {
  CodeConfig cfg;
  cfg.gamma = RingElem::one();
  const DecayRecord r = decay(1, 1, cfg);
  CHECK(r.min_detsq.is_zero());
  const oracle::BruteResult ref = oracle::brute_force_decay(1, 1, {1, 0, 0, 0});
  CHECK(ref.detsq.p == 0);
  CHECK(ref.detsq.q == 0);
  CHECK(coords(r.witness1) == ref.w1);
  CHECK(coords(r.witness2) == ref.w2);
}
