#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "rankkit/admissible.hpp"
#include "rankkit/matrix.hpp"
#include "rankkit/rank_result.hpp"

namespace rankkit {

/// Bipartite set/element incidence for the minimum-cover problem.
///
/// Elements are support positions in lexicographic order. The layout phi
/// lists u_1, then the sets that first appear with u_1, then u_2, and so on;
/// each vertex gets its first-appearance index (1-based). Sets are stored in
/// that order, so a set's index order equals its phi order.
struct CoverInstance {
  std::vector<AdmissibleSet> sets;                  // may be empty for raw instances
  Support elements;                                 // may be empty for raw instances
  std::size_t element_count = 0;
  std::vector<std::vector<std::size_t>> members;    // set -> sorted element indices
  std::vector<std::vector<std::size_t>> incidence;  // element -> sorted set indices
  std::vector<std::size_t> element_layout;          // phi of each element
  std::vector<std::size_t> set_layout;              // phi of each set
  std::size_t spread_bound = 0;                     // max |phi(e) - phi(s)| over edges
};

/// Instance over abstract elements 0..element_count-1. Sets are reordered by
/// (first element, member list); empty sets are dropped.
CoverInstance cover_instance_from_members(std::size_t element_count,
                                          std::vector<std::vector<std::size_t>> members);

CoverInstance build_cover_instance(const BandMatrix& m, Semiring kind,
                                   EnumerationStats* stats = nullptr, OpCounter* ops = nullptr);

struct CoverSolution {
  std::vector<std::size_t> chosen;  // ascending set indices
  std::size_t size() const { return chosen.size(); }
};

/// Exact minimum cover by a left-to-right sweep over the layout. The state is
/// the coverage bitmask of the next W elements, where W is the widest set
/// span, so the work is (#elements + #sets) * (#states per layer). Among
/// minimum covers the lexicographically smallest index list is returned.
/// Throws Uncoverable.
CoverSolution solve_cover_dp(const CoverInstance& instance, std::size_t* dp_states = nullptr);

/// Branch-and-bound minimum cover, independent of the sweep. Throws TooLarge
/// when the instance has more than `max_sets` sets, Uncoverable if some
/// element lies in no set.
CoverSolution solve_cover_exhaustive(const CoverInstance& instance, std::size_t max_sets = 24);

/// Boolean, fuzzy or tropical factorization rank of a band matrix, with a
/// verified certificate of rank-one summands. Throws CarrierViolation.
RankResult band_rank(const BandMatrix& m, Semiring kind);

/// End-to-end oracle: every admissible subset (no windowing, independent
/// deciders) followed by exhaustive cover. Throws TooLarge when n > max_n.
std::size_t brute_force_band_rank(const BandMatrix& m, Semiring kind, std::size_t max_n = 8);

}  // namespace rankkit
