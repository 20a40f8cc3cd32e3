#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rankkit/matrix.hpp"
#include "rankkit/rank_result.hpp"
#include "rankkit/semiring.hpp"

namespace rankkit {

/// A tridiagonal matrix stored by its three diagonals.
struct TridiagonalBlock {
  std::vector<Rational> diag;   // (i, i)
  std::vector<Rational> upper;  // (i, i+1)
  std::vector<Rational> lower;  // (i+1, i)

  std::size_t size() const { return diag.size(); }
  TridiagonalBlock transposed() const { return {diag, lower, upper}; }
  DenseMatrix to_dense() const;

  /// Throws NotTridiagonal for non-square input or entries off the three diagonals.
  static TridiagonalBlock from_dense(const DenseMatrix& d);
};

/// How consecutive blocks touch. UpperUnit: the single nonzero sits at
/// (last row of block b, first column of block b+1); LowerUnit is the mirror.
enum class CouplerKind { None, UpperUnit, LowerUnit };

struct Coupler {
  CouplerKind kind = CouplerKind::None;
  Rational value;
};

/// Block-diagonal form of a tridiagonal matrix: maximal runs whose sub- and
/// superdiagonal are entirely nonzero, separated by at most one unit coupler.
struct BlockDecomposition {
  std::vector<std::size_t> starts;  // 1-based first index of each block
  std::vector<TridiagonalBlock> blocks;
  std::vector<Coupler> couplers;    // blocks.size() - 1 entries

  std::vector<std::size_t> sizes() const;
};

BlockDecomposition block_decompose(const BandMatrix& a, OpCounter* ops = nullptr);
/// Inverse of block_decompose (half-width 1).
BandMatrix reassemble(const BlockDecomposition& d);

/// Nonnegative rank of a block with nonzero sub/superdiagonals: size or
/// size - 1. When deficient, `chain` holds size - 1 nonnegative rank-one
/// pieces (block-local 1-based indices) that sum to the block.
struct FullRankOutcome {
  std::size_t value = 0;
  std::size_t size = 0;
  std::vector<Summand> chain;

  bool full() const { return value == size; }
};

/// Throws PreconditionViolated on a zero off-diagonal or a negative entry.
FullRankOutcome full_rank_check(const TridiagonalBlock& d, OpCounter* ops = nullptr);
FullRankOutcome full_rank_check(const DenseMatrix& d, OpCounter* ops = nullptr);

/// Which line must be otherwise zero for the (i, j) entry to be peeled.
enum class PeelForm { Column, Row };

struct PeelResult {
  DenseMatrix reduced;
  std::size_t increment = 1;
};

/// If A_ij > 0 is the only nonzero of its column (Column form) or of its row
/// (Row form), rank_+(A) = 1 + rank_+ of A without row i and column j.
/// Throws PreconditionViolated otherwise.
PeelResult peel_single_nonzero(const DenseMatrix& a, std::size_t i, std::size_t j,
                               PeelForm form = PeelForm::Column);

/// One reduction of the block sweep: blocks [first_block, last_block] were
/// consumed for `contribution` to the rank, read through a transpose when
/// `transposed` is set.
struct NnrStep {
  std::size_t first_block = 0;
  std::size_t last_block = 0;
  bool transposed = false;
  std::size_t contribution = 0;
  FullRankOutcome head;
};

struct NnrTrace {
  BlockDecomposition blocks;
  std::vector<NnrStep> steps;
  std::size_t rank = 0;
};

/// Throws NotTridiagonal.
NnrTrace nnr_trace(const BandMatrix& a, OpCounter* ops = nullptr);

/// Rank-one summands realising the trace; count equals trace.rank.
RankCertificate nnr_certificate(const BandMatrix& a, const NnrTrace& trace);

/// Exact nonnegative rank of a tridiagonal matrix with a verified certificate.
/// stats.arithmetic_ops counts the rank computation only.
RankResult nnr_tridiagonal(const BandMatrix& a);

/// Independent oracle for n <= max_n: smallest set of rank-one pieces (row
/// lines, column lines, 2x2 diagonal blocks) that can sum to A, decided by
/// exact interval propagation along chains of blocks. Throws TooLarge.
std::size_t pattern_oracle_nnr(const BandMatrix& a, std::size_t max_n = 8);

}  // namespace rankkit
