#include "decaylab/decay_search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <tuple>

namespace decaylab {

namespace {

using Coords = std::array<int, 4>;

Coords times_i(const Coords& v) { return {-v[1], v[0], -v[3], v[2]}; }

UserCoords to_user(const Coords& v) { return {v[0], v[1], v[2], v[3]}; }

RingElem to_ring(const Coords& v) { return {v[0], v[1], v[2], v[3]}; }

std::vector<Coords> orbit_reps(int n) {
  std::vector<Coords> out;
  const std::size_t side = 2 * static_cast<std::size_t>(n) + 1;
  out.reserve((side * side * side * side - 1) / 4);
  Coords v;
  for (v[0] = -n; v[0] <= n; ++v[0])
    for (v[1] = -n; v[1] <= n; ++v[1])
      for (v[2] = -n; v[2] <= n; ++v[2])
        for (v[3] = -n; v[3] <= n; ++v[3]) {
          if (v == Coords{0, 0, 0, 0}) continue;
          const Coords iv = times_i(v);
          const Coords mv = times_i(iv);
          const Coords miv = times_i(mv);
          if (v < iv && v < mv && v < miv) out.push_back(v);
        }
  return out;
}

// Precomputed double-precision data for one representative.
struct Entry {
  Coords v;
  std::complex<double> direct;     // user 1: x1;               user 2: x2
  std::complex<double> conjugate;  // user 1: gamma sigma(x1);  user 2: sigma(x2)
  double direct_abs;
  double conjugate_abs;
  double scale;  // l1 norm of the coordinates
};

std::complex<double> small_complex(const Coords& v) {
  return {v[0] + v[2] * kTau, v[1] + v[3] * kTau};
}

std::vector<Entry> make_entries(const std::vector<Coords>& reps, bool first_user,
                                const std::complex<double>& gamma) {
  std::vector<Entry> out;
  out.reserve(reps.size());
  for (const Coords& v : reps) {
    const std::complex<double> x = small_complex(v);
    const Coords sv = {v[0] + v[2], v[1] + v[3], -v[2], -v[3]};
    std::complex<double> sx = small_complex(sv);
    if (first_user) sx *= gamma;
    const double scale = std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]) + std::abs(v[3]);
    out.push_back({v, x, sx, std::abs(x), std::abs(sx), scale});
  }
  return out;
}

struct Best {
  bool found = false;
  QuadInt detsq;
  double detsq_float = std::numeric_limits<double>::infinity();
  Coords w1{};
  Coords w2{};
  std::uint64_t visited = 0;
  std::uint64_t confirmed = 0;

  // Exact comparison with the canonical tie-break on (w1, w2).
  bool improved_by(const QuadInt& value, const Coords& c1, const Coords& c2) const {
    if (!found) return true;
    const auto ord = cmp_quad(value, detsq);
    if (ord != std::strong_ordering::equal) return ord == std::strong_ordering::less;
    return std::tie(c1, c2) < std::tie(w1, w2);
  }

  void take(QuadInt value, const Coords& c1, const Coords& c2) {
    found = true;
    detsq = std::move(value);
    detsq_float = detsq.to_double();
    w1 = c1;
    w2 = c2;
  }
};

// Absolute error of the double-precision determinant is bounded by a small
// multiple of eps * scale1 * scale2 * |gamma|_1; 1e-13 leaves a wide margin.
constexpr double kFloatErrorFactor = 1e-13;

void scan(const std::vector<Entry>& users1, std::size_t begin, std::size_t end,
          const std::vector<Entry>& users2, const CodeConfig& cfg, double gamma_scale, Best& best) {
  double threshold = std::numeric_limits<double>::infinity();
  for (std::size_t i = begin; i < end; ++i) {
    const Entry& e1 = users1[i];
    for (const Entry& e2 : users2) {
      const double m1 = e1.direct_abs * e2.conjugate_abs;
      const double m2 = e1.conjugate_abs * e2.direct_abs;
      const double err = kFloatErrorFactor * gamma_scale * (e1.scale * e2.scale + 1.0);

      // |det| >= | |x1 sigma(x2)| - |gamma sigma(x1) x2| |
      double lb = std::abs(m1 - m2) - err;
      if (lb > 0 && lb * lb > threshold) continue;

      const std::complex<double> det = e1.direct * e2.conjugate - e1.conjugate * e2.direct;
      lb = std::abs(det) - err;
      if (lb > 0 && lb * lb > threshold) continue;

      ++best.confirmed;
      QuadInt exact = det_abs_squared(to_ring(e1.v), to_ring(e2.v), cfg);
      if (best.improved_by(exact, e1.v, e2.v)) {
        best.take(std::move(exact), e1.v, e2.v);
        threshold = best.detsq_float * (1.0 + kPruneMargin);
      }
    }
    best.visited += users2.size();
  }
}

}  // namespace

void SearchBox::validate() const {
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("search box sizes must be >= 1 (got " + std::to_string(n1) + ", " +
                                std::to_string(n2) + ")");
  }
}

double DecayRecord::decay_value() const { return std::sqrt(min_detsq_float); }

BudgetExceeded::BudgetExceeded(std::uint64_t pairs, std::uint64_t budget)
    : std::runtime_error("search needs " + std::to_string(pairs) + " reduced pairs, budget is " +
                         std::to_string(budget)),
      pairs_(pairs),
      budget_(budget) {}

std::vector<UserCoords> enumerate_orbit_reps(int n) {
  if (n < 1) throw std::invalid_argument("orbit enumeration needs N >= 1");
  std::vector<UserCoords> out;
  for (const Coords& v : orbit_reps(n)) out.push_back(to_user(v));
  return out;
}

UserCoords times_i(const UserCoords& u) { return {-u.b, u.a, -u.d, u.c}; }

std::uint64_t reduced_pair_count(int n1, int n2) {
  auto reps = [](int n) {
    const std::uint64_t side = 2 * static_cast<std::uint64_t>(n) + 1;
    return (side * side * side * side - 1) / 4;
  };
  return reps(n1) * reps(n2);
}

DecayRecord decay(int n1, int n2, const CodeConfig& cfg, const SearchOptions& opts) {
  SearchBox{n1, n2}.validate();
  const std::uint64_t pairs = reduced_pair_count(n1, n2);
  if (!opts.override_budget && pairs > opts.budget) throw BudgetExceeded(pairs, opts.budget);

  const auto start = std::chrono::steady_clock::now();

  std::vector<Coords> reps1 = orbit_reps(n1);
  std::vector<Coords> reps2 = orbit_reps(n2);
  if (opts.shuffle_seed) {
    std::mt19937_64 rng(*opts.shuffle_seed);
    std::shuffle(reps1.begin(), reps1.end(), rng);
    std::shuffle(reps2.begin(), reps2.end(), rng);
  }

  const std::complex<double> gamma = to_complex(cfg.gamma);
  const auto users1 = make_entries(reps1, true, gamma);
  const auto users2 = make_entries(reps2, false, gamma);
  const double gamma_scale =
      3.0 * std::max(1.0, std::abs(cfg.gamma.a.get_d()) + std::abs(cfg.gamma.b.get_d()) +
                              std::abs(cfg.gamma.c.get_d()) + std::abs(cfg.gamma.d.get_d()));

  const unsigned workers =
      std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(users1.size())));
  std::vector<Best> bests(workers);
  if (workers == 1) {
    scan(users1, 0, users1.size(), users2, cfg, gamma_scale, bests[0]);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (users1.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(users1.size(), w * chunk);
      const std::size_t end = std::min(users1.size(), begin + chunk);
      threads.emplace_back([&, begin, end, w] {
        scan(users1, begin, end, users2, cfg, gamma_scale, bests[w]);
      });
    }
    for (auto& t : threads) t.join();
  }

  Best merged;
  for (Best& b : bests) {
    merged.visited += b.visited;
    merged.confirmed += b.confirmed;
    if (b.found && merged.improved_by(b.detsq, b.w1, b.w2)) merged.take(b.detsq, b.w1, b.w2);
  }

  DecayRecord rec;
  rec.n1 = n1;
  rec.n2 = n2;
  rec.min_detsq = merged.detsq;
  rec.min_detsq_float = merged.detsq_float;
  rec.witness1 = to_user(merged.w1);
  rec.witness2 = to_user(merged.w2);
  rec.orbit_reduced_count = pairs;
  rec.visited_pairs = merged.visited;
  rec.exact_confirmations = merged.confirmed;
  rec.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<DecayRecord> decay_series(int nmax, SeriesMode mode, const CodeConfig& cfg,
                                      const SearchOptions& opts) {
  if (nmax < 1) throw std::invalid_argument("series needs Nmax >= 1");
  auto box = [mode](int n) { return mode == SeriesMode::equal ? SearchBox{n, n} : SearchBox{n, 1}; };
  if (!opts.override_budget) {
    for (int n = 1; n <= nmax; ++n) {
      const std::uint64_t pairs = reduced_pair_count(box(n).n1, box(n).n2);
      if (pairs > opts.budget) throw BudgetExceeded(pairs, opts.budget);
    }
  }
  std::vector<DecayRecord> out;
  out.reserve(nmax);
  for (int n = 1; n <= nmax; ++n) out.push_back(decay(box(n).n1, box(n).n2, cfg, opts));
  return out;
}

}  // namespace decaylab
