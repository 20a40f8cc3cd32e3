#pragma once

#include <span>
#include <vector>

#include "rankkit/matrix.hpp"
#include "rankkit/semiring.hpp"

// Brute-force deciders kept apart from the production path. Nothing here
// calls into admissible.cpp or the cover sweep.
namespace rankkit::oracle {

/// Tropical admissibility by Fourier-Motzkin elimination over the raw
/// variables u_i and 1/v_j (multiplicative difference constraints).
bool tropical_admissible(const BandMatrix& m, std::span<const Position> alpha);

/// Fuzzy admissibility by exhausting which side of each min() is tight
/// (alpha cells) or violated (the other rectangle cells).
bool fuzzy_admissible(const BandMatrix& m, std::span<const Position> alpha);

/// Every admissible subset of S(M), found by scanning all row and column
/// subsets. Only for small n.
std::vector<Support> all_admissible(const BandMatrix& m, Semiring kind);

/// Inclusion-maximal members of `family`, sorted.
std::vector<Support> maximal_only(std::vector<Support> family);

}  // namespace rankkit::oracle
