#include <doctest.h>

#include <random>

#include "instances.hpp"
#include "rankkit/admissible.hpp"
#include "rankkit/error.hpp"
#include "rankkit/generate.hpp"
#include "rankkit/oracle.hpp"

using namespace rankkit;
using rankkit::testing::band;

namespace {

std::vector<Support> alphas(const std::vector<AdmissibleSet>& sets) {
  std::vector<Support> out;
  for (const auto& s : sets) out.push_back(s.alpha);
  return out;
}

std::size_t spread(const std::vector<std::size_t>& xs) { return xs.back() - xs.front(); }

}  // namespace

TEST_CASE("t_admissible examples") {
  const BandMatrix ones = band(1, {{1, 1}, {1, 1}});
  const Support all{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  const auto w = t_admissible(ones, all);
  REQUIRE(w.has_value());
  CHECK(check_witness(ones, all, Semiring::Tropical, *w));
  CHECK(w->u[0] * w->v[0] == 1);

  const BandMatrix m = band(1, {{2, 1}, {1, 2}});
  CHECK_FALSE(t_admissible(m, all).has_value());
  CHECK_FALSE(oracle::tropical_admissible(m, all));

  const Support ell{{1, 1}, {1, 2}, {2, 1}};
  const auto lw = t_admissible(m, ell);
  REQUIRE(lw.has_value());
  CHECK(check_witness(m, ell, Semiring::Tropical, *lw));
  CHECK(lw->u[1] * lw->v[1] < 2);
  CHECK(check_witness(m, ell, Semiring::Tropical, Witness{{1, Rational(1, 2)}, {2, 1}}));
  // u=(1,1), v=(2,1) gives u_2 v_1 = 2, not 1
  CHECK_FALSE(check_witness(m, ell, Semiring::Tropical, Witness{{1, 1}, {2, 1}}));
}

TEST_CASE("f_admissible examples") {
  const BandMatrix half = band(1, {{Rational(1, 2)}});
  const Support one{{1, 1}};
  const auto w = f_admissible(half, one);
  REQUIRE(w.has_value());
  CHECK(w->u == std::vector<Rational>{Rational(1, 2)});
  CHECK(check_witness(half, one, Semiring::Fuzzy, *w));

  const Support all{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  const BandMatrix flat = band(1, {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}});
  const auto fw = f_admissible(flat, all);
  REQUIRE(fw.has_value());
  CHECK(check_witness(flat, all, Semiring::Fuzzy, *fw));
  CHECK(check_witness(flat, all, Semiring::Fuzzy, Witness{{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}}));

  const BandMatrix m = band(1, {{Rational(1, 2), Rational(1, 4)}, {Rational(1, 4), Rational(1, 2)}});
  CHECK_FALSE(f_admissible(m, all).has_value());
  CHECK_FALSE(oracle::fuzzy_admissible(m, all));
}

TEST_CASE("boolean_admissible examples") {
  const BandMatrix ones = band(1, {{1, 1}, {1, 1}});
  CHECK(boolean_admissible(ones, Support{{1, 1}, {1, 2}, {2, 1}, {2, 2}}));
  CHECK_FALSE(boolean_admissible(ones, Support{{1, 1}, {2, 2}}));
  CHECK(boolean_admissible(band(1, {{1, 1, 0}, {1, 1, 1}, {0, 0, 1}}), Support{{1, 1}, {1, 2}}));
}

TEST_CASE("admissibility argument errors") {
  const BandMatrix ones = band(1, {{1, 1}, {1, 0}});
  CHECK_THROWS_AS(t_admissible(ones, Support{}), Error);
  try {
    t_admissible(ones, Support{{2, 2}});
    FAIL("expected NotInSupport");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInSupport);
  }
  CHECK_THROWS_AS(admissible(ones, Support{{1, 1}}, Semiring::Nonnegative), Error);
}

TEST_CASE("enumerate_maximal_admissible examples") {
  CHECK(enumerate_maximal_admissible(from_triplets(3, 1, {}), Semiring::Tropical).empty());

  const auto ones = enumerate_maximal_admissible(band(1, {{1, 1}, {1, 1}}), Semiring::Tropical);
  REQUIRE(ones.size() == 1);
  CHECK(ones[0].alpha.size() == 4);

  // Dropping an off-diagonal corner forces 2*2/1 = 4 > 1 there, so only the
  // two L-shapes missing a diagonal corner survive.
  const BandMatrix m = band(1, {{2, 1}, {1, 2}});
  const auto ells = enumerate_maximal_admissible(m, Semiring::Tropical);
  CHECK(alphas(ells) == std::vector<Support>{{{1, 1}, {1, 2}, {2, 1}}, {{1, 2}, {2, 1}, {2, 2}}});
  CHECK_FALSE(t_admissible(m, Support{{1, 1}, {1, 2}, {2, 2}}).has_value());
  CHECK_FALSE(t_admissible(m, Support{{1, 1}, {2, 1}, {2, 2}}).has_value());
  CHECK_FALSE(oracle::tropical_admissible(m, Support{{1, 1}, {1, 2}, {2, 2}}));
  std::size_t l_shapes = 0;
  for (const auto& a : oracle::all_admissible(m, Semiring::Tropical)) l_shapes += a.size() == 3;
  CHECK(l_shapes == 2);
}

TEST_CASE("every support singleton is admissible") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (auto kind : {Semiring::Boolean, Semiring::Fuzzy, Semiring::Tropical}) {
      const BandMatrix m = generate(seed, 5, 2, 0.7, kind);
      for (const auto& p : support(m)) {
        const Support single{p};
        const auto w = admissible(m, single, kind);
        REQUIRE(w.has_value());
        CHECK(check_witness(m, single, kind, *w));
      }
    }
  }
}

TEST_CASE("enumeration matches the exhaustive family") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const std::size_t k = 1 + (seed / 5) % 2;
    const double density = seed % 3 == 0 ? 1.0 : 0.7;
    for (auto kind : {Semiring::Boolean, Semiring::Fuzzy, Semiring::Tropical}) {
      const BandMatrix m = generate(seed * 3 + 1, n, k, density, kind);
      const auto found = enumerate_maximal_admissible(m, kind);
      CHECK(alphas(found) == oracle::maximal_only(oracle::all_admissible(m, kind)));
      for (const auto& s : found) {
        CHECK(check_witness(m, s.alpha, kind, s.witness));
        CHECK(spread(s.rows) <= 4 * k);
        CHECK(spread(s.cols) <= 4 * k);
        for (const auto& p : s.alpha) {
          const Window w = window_of(m, s.alpha.front());
          CHECK(w.contains(p));
        }
      }
    }
  }
}

TEST_CASE("production and oracle deciders agree on random subsets") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 600; ++it) {
    const auto kind = it % 2 ? Semiring::Tropical : Semiring::Fuzzy;
    const BandMatrix m = generate(rng(), 3 + rng() % 3, 1 + rng() % 2, 1.0, kind);
    const Support s = support(m);
    Support alpha;
    for (const auto& p : s) {
      if (rng() % 2) alpha.push_back(p);
    }
    if (alpha.empty()) continue;
    const auto rows = rows_of(alpha);
    const auto cols = cols_of(alpha);
    bool rectangle_ok = true;
    for (auto i : rows)
      for (auto j : cols) rectangle_ok = rectangle_ok && m.contains({i, j});
    const auto w = admissible(m, alpha, kind);
    const bool expected = kind == Semiring::Tropical ? oracle::tropical_admissible(m, alpha)
                                                     : oracle::fuzzy_admissible(m, alpha);
    CHECK(w.has_value() == expected);
    if (w) {
      CHECK(rectangle_ok);
      CHECK(check_witness(m, alpha, kind, *w));
    }
  }
}

TEST_CASE("fuzzy carrier is enforced") {
  CHECK_THROWS_AS(enumerate_maximal_admissible(band(1, {{Rational(3, 2)}}), Semiring::Fuzzy), Error);
  CHECK_THROWS_AS(enumerate_maximal_admissible(band(1, {{2}}), Semiring::Boolean), Error);
}
