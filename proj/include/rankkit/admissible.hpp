#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rankkit/matrix.hpp"
#include "rankkit/rational.hpp"
#include "rankkit/semiring.hpp"

namespace rankkit {

/// Rank-one witness for an admissible set: u over rows(alpha), v over cols(alpha).
struct Witness {
  std::vector<Rational> u;
  std::vector<Rational> v;
};

/// A subset alpha of the support that is exactly the set of positions where
/// some rank-one Q <= M touches M. For Boolean, alpha is a full rectangle.
struct AdmissibleSet {
  Support alpha;
  Semiring kind = Semiring::Tropical;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  Witness witness;

  Summand as_summand() const { return Summand{rows, cols, witness.u, witness.v}; }
};

/// The (4k+1) x (4k+1) neighbourhood of an anchor that holds every rank-one
/// support through the anchor.
struct Window {
  Position anchor;
  std::size_t row_lo = 0, row_hi = 0;
  std::size_t col_lo = 0, col_hi = 0;

  bool contains(Position p) const {
    return p.row >= row_lo && p.row <= row_hi && p.col >= col_lo && p.col <= col_hi;
  }
};

Window window_of(const BandMatrix& m, Position anchor);

/// Tropical admissibility. Returns a witness with u_i v_j = M_ij on alpha and
/// u_i v_j < M_ij on the rest of rows(alpha) x cols(alpha), or nullopt.
/// Throws EmptySubset / NotInSupport.
std::optional<Witness> t_admissible(const BandMatrix& m, std::span<const Position> alpha,
                                    OpCounter* ops = nullptr);

/// Fuzzy admissibility with min in place of the product; witness values in (0,1].
/// Throws EmptySubset / NotInSupport / CarrierViolation.
std::optional<Witness> f_admissible(const BandMatrix& m, std::span<const Position> alpha,
                                    OpCounter* ops = nullptr);

/// True iff alpha is a full combinatorial rectangle inside the support.
bool boolean_admissible(const BandMatrix& m, std::span<const Position> alpha);

/// Dispatches on kind (Nonnegative is rejected with PreconditionViolated).
std::optional<Witness> admissible(const BandMatrix& m, std::span<const Position> alpha,
                                  Semiring kind, OpCounter* ops = nullptr);

/// Exact check of a stored witness against every admissibility condition.
bool check_witness(const BandMatrix& m, std::span<const Position> alpha, Semiring kind,
                   const Witness& w);

struct EnumerationStats {
  std::size_t rectangles = 0;
  std::size_t candidates_tested = 0;
  std::size_t admissible_found = 0;
  std::size_t maximal = 0;
};

/// All inclusion-maximal admissible subsets of S(M), each exactly once, sorted
/// by position list. Every admissible set is contained in a returned one.
std::vector<AdmissibleSet> enumerate_maximal_admissible(const BandMatrix& m, Semiring kind,
                                                        EnumerationStats* stats = nullptr,
                                                        OpCounter* ops = nullptr);

}  // namespace rankkit
