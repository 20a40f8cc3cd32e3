#include <doctest.h>

#include <random>

#include "instances.hpp"
#include "rankkit/error.hpp"
#include "rankkit/tridiag_nnr.hpp"

using namespace rankkit;
using rankkit::testing::band;
using rankkit::testing::scaled;
using rankkit::testing::tridiagonal_instance;

namespace {

std::size_t full_value(const std::vector<std::vector<Rational>>& rows) {
  return full_rank_check(DenseMatrix::from_rows(rows)).value;
}

BandMatrix identity(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t i = 1; i <= n; ++i) t.push_back({i, i, 1});
  return from_triplets(n, 1, t);
}

// Block-diagonal sum of two tridiagonal matrices.
BandMatrix direct_sum(const BandMatrix& a, const BandMatrix& b) {
  std::vector<Triplet> t;
  for (const auto& [p, v] : a.entries()) t.push_back({p.row, p.col, v});
  for (const auto& [p, v] : b.entries()) t.push_back({p.row + a.n(), p.col + a.n(), v});
  return from_triplets(a.n() + b.n(), 1, t);
}

}  // namespace

TEST_CASE("block_decompose examples") {
  const auto d = block_decompose(band(1, {{1, 1, 0}, {1, 1, 1}, {0, 0, 1}}));
  CHECK(d.sizes() == std::vector<std::size_t>{2, 1});
  REQUIRE(d.couplers.size() == 1);
  CHECK(d.couplers[0].kind == CouplerKind::UpperUnit);
  CHECK(d.couplers[0].value == 1);

  const auto diag = block_decompose(identity(3));
  CHECK(diag.sizes() == std::vector<std::size_t>{1, 1, 1});
  CHECK(diag.couplers[0].kind == CouplerKind::None);
  CHECK(diag.couplers[1].kind == CouplerKind::None);

  const auto one = block_decompose(band(1, {{1, 2, 0, 0}, {3, 0, 4, 0}, {0, 5, 6, 7}, {0, 0, 8, 9}}));
  CHECK(one.sizes() == std::vector<std::size_t>{4});
  CHECK(one.couplers.empty());

  const auto lower = block_decompose(band(1, {{1, 0}, {3, 1}}));
  REQUIRE(lower.couplers.size() == 1);
  CHECK(lower.couplers[0].kind == CouplerKind::LowerUnit);
}

TEST_CASE("block_decompose round-trips and rejects wide input") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const BandMatrix m = tridiagonal_instance(seed, 1 + seed % 9, static_cast<int>(seed % 6));
    const auto d = block_decompose(m);
    CHECK(reassemble(d) == m);
    for (const auto& b : d.blocks) {
      for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        CHECK(b.upper[i].is_positive());
        CHECK(b.lower[i].is_positive());
      }
    }
  }
  CHECK_THROWS_AS(block_decompose(band(2, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}})), Error);
}

TEST_CASE("full_rank_check examples") {
  CHECK(full_value({{1, 1}, {1, 1}}) == 1);
  CHECK(full_value({{1, 2}, {1, 1}}) == 2);
  CHECK(full_value({{0, 1}, {1, 5}}) == 2);
  CHECK(full_value({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}}) == 3);
  CHECK(full_value({{0}}) == 0);
  CHECK(full_value({{3}}) == 1);
}

TEST_CASE("full_rank_check chain reconstructs deficient blocks") {
  const auto block = TridiagonalBlock::from_dense(DenseMatrix::from_rows({{2, 1, 0}, {4, 3, 1}, {0, 1, 1}}));
  const auto out = full_rank_check(block);
  CHECK(out.value == 2);
  CHECK(out.chain.size() == 2);
  const BandMatrix m = from_dense(block.to_dense(), 1);
  CHECK(verify_certificate(m, RankCertificate{Semiring::Nonnegative, out.chain}));
}

TEST_CASE("full_rank_check preconditions") {
  CHECK_THROWS_AS(full_value({{1, 0}, {1, 1}}), Error);
  CHECK_THROWS_AS(full_value({{-1, 1}, {1, 1}}), Error);
  CHECK_THROWS_AS(full_value({{1, 1, 1}, {1, 1, 1}, {0, 1, 1}}), Error);
}

TEST_CASE("peel_single_nonzero examples") {
  const auto a = peel_single_nonzero(DenseMatrix::from_rows({{1, 1}, {0, 1}}), 1, 1);
  CHECK(a.reduced == DenseMatrix::from_rows({{1}}));
  CHECK(a.increment == 1);
  const auto b = peel_single_nonzero(DenseMatrix::from_rows({{1, 0}, {0, 0}}), 1, 1);
  CHECK(b.reduced == DenseMatrix::from_rows({{0}}));

  const DenseMatrix c = DenseMatrix::from_rows({{0, 1}, {0, 5}});
  CHECK_THROWS_AS(peel_single_nonzero(c, 1, 2), Error);
  CHECK_THROWS_AS(peel_single_nonzero(c, 2, 2), Error);
  CHECK_THROWS_AS(peel_single_nonzero(c, 2, 1, PeelForm::Row), Error);
  // (1,2) is the only nonzero of row 1
  CHECK(peel_single_nonzero(c, 1, 2, PeelForm::Row).reduced == DenseMatrix::from_rows({{0}}));
}

TEST_CASE("nnr_tridiagonal examples") {
  const BandMatrix a = band(1, {{1, 1, 0}, {1, 1, 1}, {0, 0, 1}});
  const RankResult r = nnr_tridiagonal(a);
  CHECK(r.rank == 2);
  CHECK(pattern_oracle_nnr(a) == 2);
  REQUIRE(r.certificate.size() == 2);
  CHECK(r.certificate.summands[0].rows == std::vector<std::size_t>{1, 2});
  CHECK(r.certificate.summands[0].cols == std::vector<std::size_t>{1, 2});
  CHECK(r.certificate.summands[1].rows == std::vector<std::size_t>{2, 3});
  CHECK(r.certificate.summands[1].cols == std::vector<std::size_t>{3});

  const BandMatrix b = band(1, {{1, 1, 0, 0}, {1, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}});
  CHECK(nnr_tridiagonal(b).rank == 3);
  CHECK(pattern_oracle_nnr(b) == 3);
  CHECK(rational_rank(b.to_dense()) == 3);

  for (std::size_t n : {1, 2, 5, 9}) CHECK(nnr_tridiagonal(identity(n)).rank == n);
  CHECK(nnr_tridiagonal(from_triplets(4, 1, {})).rank == 0);
  CHECK(nnr_tridiagonal(from_triplets(0, 1, {})).rank == 0);
}

TEST_CASE("nnr_certificate examples") {
  const RankResult ones = nnr_tridiagonal(band(1, {{1, 1}, {1, 1}}));
  REQUIRE(ones.certificate.size() == 1);
  CHECK(ones.certificate.summands[0].u == std::vector<Rational>{1, 1});
  CHECK(ones.certificate.summands[0].v == std::vector<Rational>{1, 1});

  const RankResult rows = nnr_tridiagonal(band(1, {{1, 2}, {1, 1}}));
  REQUIRE(rows.certificate.size() == 2);
  CHECK(rows.certificate.summands[0].rows == std::vector<std::size_t>{1});
  CHECK(rows.certificate.summands[1].rows == std::vector<std::size_t>{2});
}

TEST_CASE("pattern oracle examples") {
  CHECK(pattern_oracle_nnr(band(1, {{1, 1}, {1, 1}})) == 1);
  CHECK(pattern_oracle_nnr(identity(3)) == 3);
  // a full middle row needs a 1x3 piece
  CHECK(pattern_oracle_nnr(band(1, {{0, 1, 0}, {1, 1, 1}, {0, 1, 0}})) == 2);
  CHECK_THROWS_AS(pattern_oracle_nnr(identity(9)), Error);
}

TEST_CASE("nnr properties over adversarial families") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    for (int mode = 0; mode < 6; ++mode) {
      const std::size_t n = 1 + (seed + static_cast<std::uint64_t>(mode)) % 8;
      const BandMatrix m = tridiagonal_instance(seed, n, mode);
      const RankResult r = nnr_tridiagonal(m);
      CHECK(r.rank == pattern_oracle_nnr(m));
      CHECK(rational_rank(m.to_dense()) <= r.rank);
      CHECK(r.rank <= m.n());
      CHECK(r.certificate.size() == r.rank);
      CHECK(verify_certificate(m, r.certificate));
      CHECK(nnr_tridiagonal(transpose(m)).rank == r.rank);
      CHECK(nnr_tridiagonal(scaled(m, seed)).rank == r.rank);
      const auto d = block_decompose(m);
      if (d.blocks.size() == 1) CHECK(r.rank + 1 >= m.n());
    }
  }
}

TEST_CASE("ranks add over block-diagonal sums") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const BandMatrix a = tridiagonal_instance(seed, 1 + seed % 4, static_cast<int>(seed % 6));
    const BandMatrix b = tridiagonal_instance(seed + 500, 1 + (seed / 4) % 4, static_cast<int>((seed + 3) % 6));
    CHECK(nnr_tridiagonal(direct_sum(a, b)).rank == nnr_tridiagonal(a).rank + nnr_tridiagonal(b).rank);
  }
}

TEST_CASE("operation count is linear") {
  std::uint64_t prev = 0;
  for (std::size_t n : {50, 100, 200, 400}) {
    std::mt19937_64 rng(n);
    std::vector<Triplet> t;
    for (std::size_t i = 1; i <= n; ++i) {
      t.push_back({i, i, Rational(static_cast<long>(5 + rng() % 5))});
      if (i < n) {
        t.push_back({i, i + 1, Rational(static_cast<long>(1 + rng() % 2))});
        t.push_back({i + 1, i, Rational(static_cast<long>(1 + rng() % 2))});
      }
    }
    const auto ops = nnr_tridiagonal(from_triplets(n, 1, t)).stats.arithmetic_ops;
    CHECK(ops <= 8 * n);
    if (prev) CHECK(ops <= 2 * prev + 8);
    prev = ops;
  }
}
