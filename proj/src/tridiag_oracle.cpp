#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rankkit/error.hpp"
#include "rankkit/tridiag_nnr.hpp"

namespace rankkit {

namespace {

enum class PieceKind { Row, Col, Block };

struct Piece {
  PieceKind kind;
  std::size_t index;
  std::vector<std::size_t> cells;  // indices into the support list
};

struct Interval {
  Rational lo;
  std::optional<Rational> hi;  // nullopt is +infinity
};

class PatternSearch {
 public:
  explicit PatternSearch(const BandMatrix& a) : a_(a), n_(a.n()) {
    for (const auto& [p, v] : a.entries()) cells_.push_back(p);
    const auto cell_index = [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
      const auto it = std::lower_bound(cells_.begin(), cells_.end(), Position{i, j});
      if (it == cells_.end() || *it != Position{i, j}) return std::nullopt;
      return static_cast<std::size_t>(it - cells_.begin());
    };
    for (std::size_t i = 1; i <= n_; ++i) {
      Piece row{PieceKind::Row, i, {}};
      Piece col{PieceKind::Col, i, {}};
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        if (cells_[c].row == i) row.cells.push_back(c);
        if (cells_[c].col == i) col.cells.push_back(c);
      }
      if (!row.cells.empty()) pieces_.push_back(std::move(row));
      if (!col.cells.empty()) pieces_.push_back(std::move(col));
      if (i < n_) {
        Piece block{PieceKind::Block, i, {}};
        for (auto [r, c] : {std::pair{i, i}, {i, i + 1}, {i + 1, i}, {i + 1, i + 1}}) {
          if (auto idx = cell_index(r, c)) block.cells.push_back(*idx);
        }
        if (block.cells.size() == 4) pieces_.push_back(std::move(block));
      }
    }
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& x, const Piece& y) {
      return x.cells.front() < y.cells.front();
    });
    last_coverer_.assign(cells_.size(), 0);
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
      for (auto c : pieces_[p].cells) last_coverer_[c] = std::max(last_coverer_[c], p);
    }
    nonzero_rows_ = 0;
    for (const auto& p : pieces_) nonzero_rows_ += p.kind == PieceKind::Row;
  }

  std::size_t minimum(std::size_t lower) {
    for (std::size_t r = lower; r < nonzero_rows_; ++r) {
      chosen_.assign(pieces_.size(), false);
      cover_.assign(cells_.size(), 0);
      if (search(0, r)) return r;
    }
    return nonzero_rows_;
  }

 private:
  bool search(std::size_t next, std::size_t budget) {
    if (next == pieces_.size()) return feasible();
    // Any cell whose last possible coverer is `next - 1` must be covered by now.
    if (next > 0) {
      for (auto c : pieces_[next - 1].cells) {
        if (last_coverer_[c] == next - 1 && cover_[c] == 0) return false;
      }
    }
    if (budget > 0) {
      chosen_[next] = true;
      for (auto c : pieces_[next].cells) ++cover_[c];
      const bool ok = search(next + 1, budget - 1);
      for (auto c : pieces_[next].cells) --cover_[c];
      chosen_[next] = false;
      if (ok) return true;
    }
    if (next + 1 == pieces_.size()) {
      for (auto c : pieces_[next].cells) {
        if (cover_[c] == 0) return false;
      }
    }
    return search(next + 1, budget);
  }

  bool feasible() const {
    std::vector<bool> row_line(n_ + 2, false), col_line(n_ + 2, false), block(n_ + 2, false);
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
      if (!chosen_[p]) continue;
      const auto& piece = pieces_[p];
      if (piece.kind == PieceKind::Row) row_line[piece.index] = true;
      if (piece.kind == PieceKind::Col) col_line[piece.index] = true;
      if (piece.kind == PieceKind::Block) block[piece.index] = true;
    }
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      if (cover_[c] == 0) return false;
    }
    const auto lined = [&](std::size_t i, std::size_t j) { return row_line[i] || col_line[j]; };

    for (std::size_t start = 1; start < n_; ++start) {
      if (!block[start] || block[start - 1]) continue;
      const Rational& first = a_.at(start, start);
      Interval p{lined(start, start) ? Rational() : first, first};
      for (std::size_t x = start;; ++x) {
        const Rational& up = a_.at(x, x + 1);
        const Rational& down = a_.at(x + 1, x);
        const Rational low = (lined(x, x + 1) ? Rational() : up) * (lined(x + 1, x) ? Rational() : down);
        const Rational high = up * down;
        // Range of the bottom-right entry t given p in [p.lo, p.hi] and p t in [low, high].
        Interval t;
        const Rational& p_hi = *p.hi;
        if (p_hi.is_positive()) {
          t.lo = low / p_hi;
        } else if (!low.is_zero()) {
          return false;
        }
        if (p.lo.is_positive()) t.hi = high / p.lo;

        const Rational& diag = a_.at(x + 1, x + 1);
        const bool diag_lined = lined(x + 1, x + 1);
        if (t.lo > diag) return false;
        if (!block[x + 1]) {
          if (!diag_lined && t.hi && *t.hi < diag) return false;
          break;
        }
        const Rational top = diag - t.lo;
        if (diag_lined) {
          p = Interval{Rational(), top};
        } else {
          const Rational used = t.hi ? min(*t.hi, diag) : diag;
          p = Interval{diag - used, top};
        }
      }
    }
    return true;
  }

  const BandMatrix& a_;
  std::size_t n_;
  std::vector<Position> cells_;
  std::vector<Piece> pieces_;
  std::vector<std::size_t> last_coverer_;
  std::size_t nonzero_rows_ = 0;
  std::vector<bool> chosen_;
  std::vector<int> cover_;
};

}  // namespace

std::size_t pattern_oracle_nnr(const BandMatrix& a, std::size_t max_n) {
  if (a.n() > max_n) {
    throw Error(ErrorCode::TooLarge, "pattern oracle limited to n <= " + std::to_string(max_n));
  }
  for (const auto& [p, v] : a.entries()) {
    const std::size_t dist = p.row > p.col ? p.row - p.col : p.col - p.row;
    if (dist > 1) throw Error(ErrorCode::NotTridiagonal, "entry off the tridiagonal band");
  }
  if (a.is_zero()) return 0;
  PatternSearch search(a);
  return search.minimum(rational_rank(a.to_dense()));
}

}  // namespace rankkit
