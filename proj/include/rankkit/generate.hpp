#pragma once

#include <cstdint>

#include "rankkit/matrix.hpp"
#include "rankkit/semiring.hpp"

namespace rankkit {

/// Seeded random band matrix. Each band position is populated with
/// probability `density`; values come from the carrier of `kind` (Boolean: 1,
/// fuzzy: p/q in (0,1], otherwise small positive fractions). The output only
/// depends on the arguments. Throws BadParameters unless density is in [0,1].
BandMatrix generate(std::uint64_t seed, std::size_t n, std::size_t k, double density,
                    Semiring kind);

}  // namespace rankkit
