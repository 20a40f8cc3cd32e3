#include <doctest.h>

#include <random>

#include "instances.hpp"
#include "rankkit/band_cover.hpp"
#include "rankkit/error.hpp"
#include "rankkit/generate.hpp"

using namespace rankkit;
using rankkit::testing::band;
using rankkit::testing::pattern;
using rankkit::testing::scaled;

namespace {

std::size_t nonzero_rows(const BandMatrix& m) {
  std::vector<bool> seen(m.n() + 1, false);
  for (const auto& [p, v] : m.entries()) seen[p.row] = true;
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
}

BandMatrix drop_row(const BandMatrix& m, std::size_t row) {
  std::vector<Triplet> t;
  for (const auto& [p, v] : m.entries()) {
    if (p.row != row) t.push_back({p.row, p.col, v});
  }
  return from_triplets(m.n(), m.k(), t);
}

bool covers(const CoverInstance& inst, const CoverSolution& sol) {
  std::vector<bool> hit(inst.element_count, false);
  for (auto s : sol.chosen)
    for (auto e : inst.members[s]) hit[e] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

}  // namespace

TEST_CASE("build_cover_instance examples") {
  const CoverInstance zero = build_cover_instance(from_triplets(2, 1, {}), Semiring::Tropical);
  CHECK(zero.element_count == 0);
  CHECK(zero.sets.empty());

  const CoverInstance ones = build_cover_instance(band(1, {{1, 1}, {1, 1}}), Semiring::Tropical);
  CHECK(ones.element_count == 4);
  REQUIRE(ones.sets.size() == 1);
  CHECK(ones.members[0].size() == 4);

  const CoverInstance ell = build_cover_instance(band(1, {{2, 1}, {1, 2}}), Semiring::Tropical);
  CHECK(ell.element_count == 4);
  CHECK(ell.sets.size() == 2);
  CHECK(ell.incidence == std::vector<std::vector<std::size_t>>{{0}, {0, 1}, {0, 1}, {1}});
}

TEST_CASE("layout places each set right after its first element") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const BandMatrix m = generate(seed, 6, 1 + seed % 2, 0.8, Semiring::Tropical);
    const CoverInstance inst = build_cover_instance(m, Semiring::Tropical);
    std::vector<std::size_t> all(inst.element_layout);
    all.insert(all.end(), inst.set_layout.begin(), inst.set_layout.end());
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    for (std::size_t s = 0; s < inst.sets.size(); ++s) {
      const std::size_t first = inst.members[s].front();
      CHECK(inst.set_layout[s] > inst.element_layout[first]);
      if (first + 1 < inst.element_count) CHECK(inst.set_layout[s] < inst.element_layout[first + 1]);
      for (auto e : inst.members[s]) {
        const auto gap = inst.element_layout[e] > inst.set_layout[s] ? inst.element_layout[e] - inst.set_layout[s]
                                                                      : inst.set_layout[s] - inst.element_layout[e];
        CHECK(gap <= inst.spread_bound);
      }
    }
  }
}

TEST_CASE("cover solver examples") {
  const CoverInstance empty = cover_instance_from_members(0, {});
  CHECK(solve_cover_dp(empty).size() == 0);
  CHECK(solve_cover_exhaustive(empty).size() == 0);

  const CoverInstance ones = build_cover_instance(band(1, {{1, 1}, {1, 1}}), Semiring::Tropical);
  CHECK(solve_cover_dp(ones).size() == 1);
  CHECK(solve_cover_exhaustive(ones).size() == 1);

  const CoverInstance ell = build_cover_instance(band(1, {{2, 1}, {1, 2}}), Semiring::Tropical);
  CHECK(solve_cover_dp(ell).size() == 2);
  CHECK(solve_cover_exhaustive(ell).size() == 2);
  CHECK(solve_cover_dp(ell).chosen == std::vector<std::size_t>{0, 1});
}

TEST_CASE("uncoverable instances are reported") {
  const CoverInstance gap = cover_instance_from_members(3, {{0}, {2}});
  CHECK_THROWS_AS(solve_cover_dp(gap), Error);
  CHECK_THROWS_AS(solve_cover_exhaustive(gap), Error);
}

TEST_CASE("sweep DP matches exhaustive search on random local set systems") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 400; ++it) {
    const std::size_t count = 1 + rng() % 14;
    const std::size_t width = 1 + rng() % 4;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t e = 0; e < count; ++e) members.push_back({e});  // singletons keep it coverable
    const std::size_t extra = rng() % 10;
    for (std::size_t s = 0; s < extra; ++s) {
      const std::size_t start = rng() % count;
      std::vector<std::size_t> set;
      for (std::size_t e = start; e < std::min(count, start + width); ++e) {
        if (e == start || rng() % 2) set.push_back(e);
      }
      members.push_back(set);
    }
    const CoverInstance inst = cover_instance_from_members(count, members);
    const CoverSolution dp = solve_cover_dp(inst);
    const CoverSolution ex = solve_cover_exhaustive(inst, 64);
    CHECK(dp.size() == ex.size());
    CHECK(covers(inst, dp));
    CHECK(std::is_sorted(dp.chosen.begin(), dp.chosen.end()));
  }
}

TEST_CASE("band_rank examples") {
  for (auto kind : {Semiring::Boolean, Semiring::Fuzzy, Semiring::Tropical}) {
    const RankResult zero = band_rank(from_triplets(3, 1, {}), kind);
    CHECK(zero.rank == 0);
    CHECK(zero.certificate.size() == 0);
    CHECK(brute_force_band_rank(from_triplets(3, 1, {}), kind) == 0);
  }
  const BandMatrix id = band(1, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(band_rank(id, Semiring::Tropical).rank == 3);
  CHECK(brute_force_band_rank(id, Semiring::Tropical) == 3);
  CHECK(brute_force_band_rank(id, Semiring::Boolean) == 3);

  const BandMatrix tri = band(1, {{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
  const RankResult r = band_rank(tri, Semiring::Tropical);
  CHECK(r.rank == 3);
  CHECK(brute_force_band_rank(tri, Semiring::Tropical) == 3);
  CHECK(verify_certificate(tri, r.certificate));

  CHECK(brute_force_band_rank(band(1, {{1, 1}, {1, 1}}), Semiring::Fuzzy) == 1);
  CHECK(band_rank(band(1, {{1, 1}, {1, 1}}), Semiring::Fuzzy).rank == 1);
}

TEST_CASE("band_rank argument checks") {
  CHECK_THROWS_AS(band_rank(band(1, {{1}}), Semiring::Nonnegative), Error);
  CHECK_THROWS_AS(band_rank(band(1, {{Rational(5, 4)}}), Semiring::Fuzzy), Error);
  CHECK_THROWS_AS(brute_force_band_rank(generate(1, 9, 1, 1.0, Semiring::Tropical), Semiring::Tropical), Error);
}

TEST_CASE("band_rank properties on random instances") {
  for (std::uint64_t seed = 0; seed < 90; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const std::size_t k = 1 + (seed / 6) % 2;
    for (auto kind : {Semiring::Boolean, Semiring::Fuzzy, Semiring::Tropical}) {
      const BandMatrix m = generate(seed + 5000, n, k, 0.4 + 0.2 * static_cast<double>(seed % 4), kind);
      const RankResult r = band_rank(m, kind);
      CHECK(r.certificate.size() == r.rank);
      CHECK(verify_certificate(m, r.certificate));
      CHECK(r.rank == brute_force_band_rank(m, kind));
      CHECK(band_rank(transpose(m), kind).rank == r.rank);
      CHECK(r.rank <= nonzero_rows(m));
      CHECK(r.rank <= nonzero_rows(transpose(m)));
      CHECK(band_rank(pattern(m), Semiring::Boolean).rank <= r.rank + (kind == Semiring::Fuzzy ? n : 0));
      if (kind == Semiring::Tropical) {
        CHECK(band_rank(pattern(m), Semiring::Boolean).rank <= r.rank);
        CHECK(band_rank(scaled(m, seed), kind).rank == r.rank);
      }
      for (std::size_t row = 1; row <= n; row += 2) {
        CHECK(brute_force_band_rank(drop_row(m, row), kind) <= r.rank);
      }
    }
  }
}

TEST_CASE("structured low-entropy instances agree with the oracle") {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 300; ++it) {
    const auto kind = it % 2 ? Semiring::Tropical : Semiring::Fuzzy;
    const std::size_t n = 2 + rng() % 6, k = 1 + rng() % 2;
    std::vector<Triplet> t;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = (i > k ? i - k : 1); j <= std::min(n, i + k); ++j) {
        if (rng() % 5 == 0) continue;
        const long x = 1 + static_cast<long>(rng() % 2);
        t.push_back({i, j, kind == Semiring::Tropical ? Rational(x) : Rational(x, 2)});
      }
    }
    const BandMatrix m = from_triplets(n, k, t);
    const RankResult r = band_rank(m, kind);
    CHECK(r.rank == brute_force_band_rank(m, kind));
    CHECK(verify_certificate(m, r.certificate));
  }
}

TEST_CASE("stats are filled") {
  const RankResult r = band_rank(generate(3, 30, 1, 1.0, Semiring::Tropical), Semiring::Tropical);
  CHECK(r.stats.sets_enumerated > 0);
  CHECK(r.stats.dp_states > 0);
  CHECK(r.stats.arithmetic_ops > 0);
}
