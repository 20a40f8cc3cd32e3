#include "rankkit/generate.hpp"

#include <random>
#include <vector>

#include "rankkit/error.hpp"

namespace rankkit {

namespace {

// Uniform draw from [0, bound) by rejection; mt19937_64 itself is fully
// specified so this stays identical across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

BandMatrix generate(std::uint64_t seed, std::size_t n, std::size_t k, double density,
                    Semiring kind) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw Error(ErrorCode::BadParameters, "density must lie in [0,1]");
  }
  std::mt19937_64 rng(seed);
  // Compare 32 random bits against density scaled to 2^32.
  const auto threshold = static_cast<std::uint64_t>(density * 4294967296.0);
  std::vector<Triplet> triplets;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > k ? i - k : 1;
    const std::size_t hi = std::min(n, i + k);
    for (std::size_t j = lo; j <= hi; ++j) {
      if ((rng() >> 32) >= threshold) continue;
      Rational value;
      switch (kind) {
        case Semiring::Boolean:
          value = 1;
          break;
        case Semiring::Fuzzy: {
          const auto q = static_cast<long>(1 + draw(rng, 4));
          const auto p = static_cast<long>(1 + draw(rng, static_cast<std::uint64_t>(q)));
          value = Rational(p, q);
          break;
        }
        case Semiring::Tropical:
        case Semiring::Nonnegative: {
          const auto p = static_cast<long>(1 + draw(rng, 4));
          const auto q = static_cast<long>(1 + draw(rng, 2));
          value = Rational(p, q);
          break;
        }
      }
      triplets.push_back({i, j, std::move(value)});
    }
  }
  return from_triplets(n, k, triplets);
}

}  // namespace rankkit
