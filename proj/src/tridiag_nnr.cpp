#include "rankkit/tridiag_nnr.hpp"

#include <chrono>
#include <string>
#include <utility>

#include "rankkit/error.hpp"

namespace rankkit {

namespace {

void require_tridiagonal(const BandMatrix& a) {
  for (const auto& [p, v] : a.entries()) {
    const std::size_t dist = p.row > p.col ? p.row - p.col : p.col - p.row;
    if (dist > 1) {
      throw Error(ErrorCode::NotTridiagonal, "entry (" + std::to_string(p.row) + "," +
                                                 std::to_string(p.col) + ") is off the band");
    }
  }
}

// Piece supported on one row (or column) of `entries`, zeros dropped.
Summand line_piece(std::size_t fixed, bool is_row,
                   const std::vector<std::pair<std::size_t, Rational>>& entries) {
  Summand s;
  for (const auto& [idx, value] : entries) {
    if (value.is_zero()) continue;
    if (is_row) {
      s.cols.push_back(idx);
      s.v.push_back(value);
    } else {
      s.rows.push_back(idx);
      s.u.push_back(value);
    }
  }
  if (is_row) {
    s.rows = {fixed};
    s.u = {Rational(1)};
  } else {
    s.cols = {fixed};
    s.v = {Rational(1)};
  }
  return s;
}

CouplerKind flipped(CouplerKind kind) {
  switch (kind) {
    case CouplerKind::UpperUnit: return CouplerKind::LowerUnit;
    case CouplerKind::LowerUnit: return CouplerKind::UpperUnit;
    case CouplerKind::None: break;
  }
  return CouplerKind::None;
}

}  // namespace

DenseMatrix TridiagonalBlock::to_dense() const {
  const std::size_t s = size();
  DenseMatrix d(s, s);
  for (std::size_t i = 0; i < s; ++i) d(i + 1, i + 1) = diag[i];
  for (std::size_t i = 0; i + 1 < s; ++i) {
    d(i + 1, i + 2) = upper[i];
    d(i + 2, i + 1) = lower[i];
  }
  return d;
}

TridiagonalBlock TridiagonalBlock::from_dense(const DenseMatrix& d) {
  if (d.rows() != d.cols()) throw Error(ErrorCode::NotTridiagonal, "block is not square");
  const std::size_t s = d.rows();
  TridiagonalBlock b;
  for (std::size_t i = 1; i <= s; ++i) {
    for (std::size_t j = 1; j <= s; ++j) {
      const std::size_t dist = i > j ? i - j : j - i;
      if (dist > 1 && !d(i, j).is_zero()) {
        throw Error(ErrorCode::NotTridiagonal, "nonzero entry off the three diagonals");
      }
    }
    b.diag.push_back(d(i, i));
    if (i < s) {
      b.upper.push_back(d(i, i + 1));
      b.lower.push_back(d(i + 1, i));
    }
  }
  return b;
}

std::vector<std::size_t> BlockDecomposition::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(b.size());
  return out;
}

BlockDecomposition block_decompose(const BandMatrix& a, OpCounter* ops) {
  require_tridiagonal(a);
  BlockDecomposition d;
  const std::size_t n = a.n();
  if (n == 0) return d;

  d.starts.push_back(1);
  d.blocks.emplace_back();
  for (std::size_t i = 1; i <= n; ++i) {
    auto& block = d.blocks.back();
    block.diag.push_back(a.at(i, i));
    if (i == n) break;
    const Rational& up = a.at(i, i + 1);
    const Rational& down = a.at(i + 1, i);
    tick(ops, 2);
    if (!up.is_zero() && !down.is_zero()) {
      block.upper.push_back(up);
      block.lower.push_back(down);
      continue;
    }
    Coupler c;
    if (!up.is_zero()) {
      c = {CouplerKind::UpperUnit, up};
    } else if (!down.is_zero()) {
      c = {CouplerKind::LowerUnit, down};
    }
    d.couplers.push_back(std::move(c));
    d.starts.push_back(i + 1);
    d.blocks.emplace_back();
  }
  return d;
}

BandMatrix reassemble(const BlockDecomposition& d) {
  std::vector<Triplet> triplets;
  std::size_t n = 0;
  for (std::size_t b = 0; b < d.blocks.size(); ++b) {
    const auto& block = d.blocks[b];
    const std::size_t base = d.starts[b] - 1;
    for (std::size_t i = 0; i < block.size(); ++i) {
      triplets.push_back({base + i + 1, base + i + 1, block.diag[i]});
      if (i + 1 < block.size()) {
        triplets.push_back({base + i + 1, base + i + 2, block.upper[i]});
        triplets.push_back({base + i + 2, base + i + 1, block.lower[i]});
      }
    }
    n = base + block.size();
    if (b < d.couplers.size()) {
      const Coupler& c = d.couplers[b];
      if (c.kind == CouplerKind::UpperUnit) triplets.push_back({n, n + 1, c.value});
      if (c.kind == CouplerKind::LowerUnit) triplets.push_back({n + 1, n, c.value});
    }
  }
  return from_triplets(n, 1, triplets);
}

FullRankOutcome full_rank_check(const TridiagonalBlock& d, OpCounter* ops) {
  const std::size_t s = d.size();
  if (d.upper.size() + 1 != s && s != 0) {
    throw Error(ErrorCode::PreconditionViolated, "malformed tridiagonal block");
  }
  for (std::size_t i = 0; i + 1 < s; ++i) {
    if (!d.upper[i].is_positive() || !d.lower[i].is_positive()) {
      throw Error(ErrorCode::PreconditionViolated,
                  "off-diagonal entry at step " + std::to_string(i + 1) + " is not positive");
    }
  }
  for (const auto& x : d.diag) {
    if (x.is_negative()) throw Error(ErrorCode::PreconditionViolated, "negative diagonal entry");
  }

  FullRankOutcome out;
  out.size = s;
  // Walk the recursion iteratively. `head` is the (1,1) entry of the current
  // trailing block; only it differs from the original diagonal.
  std::size_t pos = 0;
  Rational head = s > 0 ? d.diag[0] : Rational();
  bool deficient = false;
  while (pos < s) {
    const std::size_t remaining = s - pos;
    tick(ops);
    if (remaining == 1) {
      deficient = head.is_zero();
      break;
    }
    if (head.is_zero()) {
      // Column pos holds only the subdiagonal entry and then row pos holds
      // only the superdiagonal one: two forced pieces, skip two indices.
      std::vector<std::pair<std::size_t, Rational>> row{{pos + 1, d.lower[pos]},
                                                        {pos + 2, d.diag[pos + 1]}};
      if (pos + 2 < s) row.emplace_back(pos + 3, d.upper[pos + 1]);
      out.chain.push_back(line_piece(pos + 2, true, row));
      std::vector<std::pair<std::size_t, Rational>> col{{pos + 1, d.upper[pos]}};
      if (pos + 2 < s) col.emplace_back(pos + 3, d.lower[pos + 1]);
      out.chain.push_back(line_piece(pos + 2, false, col));
      pos += 2;
      if (pos < s) head = d.diag[pos];
      continue;
    }
    // The piece carrying the first row and column is forced; what remains
    // of the next diagonal entry is the residual.
    Rational ratio = d.upper[pos] / head;
    Rational residual = d.diag[pos + 1] - d.lower[pos] * ratio;
    tick(ops, 4);
    if (residual.is_negative()) {
      deficient = false;
      break;
    }
    out.chain.push_back(Summand{{pos + 1, pos + 2}, {pos + 1, pos + 2},
                                {head, d.lower[pos]}, {Rational(1), std::move(ratio)}});
    ++pos;
    head = std::move(residual);
  }
  out.value = deficient ? s - 1 : s;
  if (!deficient) out.chain.clear();
  return out;
}

FullRankOutcome full_rank_check(const DenseMatrix& d, OpCounter* ops) {
  return full_rank_check(TridiagonalBlock::from_dense(d), ops);
}

PeelResult peel_single_nonzero(const DenseMatrix& a, std::size_t i, std::size_t j,
                               PeelForm form) {
  if (!a.at(i, j).is_positive()) {
    throw Error(ErrorCode::PreconditionViolated, "peeled entry must be positive");
  }
  if (form == PeelForm::Column) {
    for (std::size_t r = 1; r <= a.rows(); ++r) {
      if (r != i && !a(r, j).is_zero()) {
        throw Error(ErrorCode::PreconditionViolated,
                    "column " + std::to_string(j) + " has another nonzero in row " +
                        std::to_string(r));
      }
    }
  } else {
    for (std::size_t c = 1; c <= a.cols(); ++c) {
      if (c != j && !a(i, c).is_zero()) {
        throw Error(ErrorCode::PreconditionViolated,
                    "row " + std::to_string(i) + " has another nonzero in column " +
                        std::to_string(c));
      }
    }
  }
  const std::size_t row[] = {i};
  const std::size_t col[] = {j};
  return PeelResult{delete_rows_cols(a, row, col), 1};
}

NnrTrace nnr_trace(const BandMatrix& a, OpCounter* ops) {
  NnrTrace trace;
  trace.blocks = block_decompose(a, ops);
  const auto& blocks = trace.blocks.blocks;
  const auto& couplers = trace.blocks.couplers;
  const std::size_t count = blocks.size();

  bool transposed = false;
  const auto coupler_kind = [&](std::size_t b) {
    const CouplerKind k = couplers[b].kind;
    return transposed ? flipped(k) : k;
  };

  std::size_t b = 0;
  while (b < count) {
    // Arrange for the coupler below the head block to vanish.
    if (b + 1 < count && coupler_kind(b) == CouplerKind::LowerUnit) transposed = !transposed;
    NnrStep step;
    step.first_block = b;
    step.transposed = transposed;
    step.head = full_rank_check(transposed ? blocks[b].transposed() : blocks[b], ops);
    if (step.head.full()) {
      step.last_block = b;
      step.contribution = blocks[b].size();
    } else {
      // Peel through every following block reached by an upper unit.
      std::size_t t = b;
      std::size_t total = blocks[b].size();
      while (t + 1 < count && coupler_kind(t) == CouplerKind::UpperUnit) {
        ++t;
        total += blocks[t].size();
        tick(ops);
      }
      step.last_block = t;
      step.contribution = total - 1;
    }
    trace.rank += step.contribution;
    b = step.last_block + 1;
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

RankCertificate nnr_certificate(const BandMatrix& a, const NnrTrace& trace) {
  RankCertificate cert;
  cert.kind = Semiring::Nonnegative;
  const std::size_t n = a.n();
  const auto& d = trace.blocks;

  for (const auto& step : trace.steps) {
    const bool tr = step.transposed;
    const auto view = [&](std::size_t i, std::size_t j) -> const Rational& {
      return tr ? a.at(j, i) : a.at(i, j);
    };
    const auto emit = [&](Summand s) {
      if (tr) {
        std::swap(s.rows, s.cols);
        std::swap(s.u, s.v);
      }
      cert.summands.push_back(std::move(s));
    };

    // The remaining matrix is rows/columns >= first; nothing before it may be touched.
    const std::size_t first = d.starts[step.first_block];
    const std::size_t head_end = first + d.blocks[step.first_block].size() - 1;
    const std::size_t last =
        d.starts[step.last_block] + d.blocks[step.last_block].size() - 1;

    if (step.head.full()) {
      for (std::size_t i = first; i <= head_end; ++i) {
        std::vector<std::pair<std::size_t, Rational>> row;
        for (std::size_t j = (i > first ? i - 1 : first); j <= std::min(n, i + 1); ++j) {
          row.emplace_back(j, view(i, j));
        }
        emit(line_piece(i, true, row));
      }
      continue;
    }
    for (const auto& piece : step.head.chain) {
      Summand s = piece;
      for (auto& r : s.rows) r += first - 1;
      for (auto& c : s.cols) c += first - 1;
      emit(std::move(s));
    }
    for (std::size_t c = head_end + 1; c <= last; ++c) {
      std::vector<std::pair<std::size_t, Rational>> col;
      for (std::size_t i = c - 1; i <= std::min(n, c + 1); ++i) col.emplace_back(i, view(i, c));
      emit(line_piece(c, false, col));
    }
  }
  return cert;
}

RankResult nnr_tridiagonal(const BandMatrix& a) {
  const auto start = std::chrono::steady_clock::now();
  OpCounter ops;
  const NnrTrace trace = nnr_trace(a, &ops);
  RankResult result;
  result.rank = trace.rank;
  result.stats.arithmetic_ops = ops.count;
  result.certificate = nnr_certificate(a, trace);
  if (result.certificate.size() != result.rank || !verify_certificate(a, result.certificate)) {
    throw Error(ErrorCode::Internal, "nonnegative certificate does not reconstruct the matrix");
  }
  result.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace rankkit
