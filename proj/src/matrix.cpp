#include "rankkit/matrix.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "rankkit/error.hpp"

namespace rankkit {

namespace {

const Rational kZero;

std::string pos_str(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols) {}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  DenseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      throw Error(ErrorCode::DimensionMismatch, "ragged row " + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < c; ++j) m(i + 1, j + 1) = rows[i][j];
  }
  return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i) m(i, i) = 1;
  return m;
}

const Rational& DenseMatrix::at(std::size_t i, std::size_t j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_) {
    throw Error(ErrorCode::OutOfRange, "dense index " + pos_str(i, j));
  }
  return (*this)(i, j);
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 1; i <= rows_; ++i)
    for (std::size_t j = 1; j <= cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

const Rational& BandMatrix::at(std::size_t i, std::size_t j) const {
  if (i < 1 || i > rows_.size()) return kZero;
  const auto& row = rows_[i - 1];
  const auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const auto& entry, std::size_t col) { return entry.first < col; });
  return it == row.end() || it->first != j ? kZero : it->second;
}

void BandMatrix::index_rows() {
  rows_.assign(n_, {});
  for (const auto& [p, v] : entries_) rows_[p.row - 1].emplace_back(p.col, v);
}

DenseMatrix BandMatrix::to_dense() const {
  DenseMatrix d(n_, n_);
  for (const auto& [p, v] : entries_) d(p.row, p.col) = v;
  return d;
}

BandMatrix from_triplets(std::size_t n, std::size_t k, std::span<const Triplet> triplets) {
  BandMatrix m;
  m.n_ = n;
  m.k_ = k;
  std::map<Position, bool> seen;
  for (const auto& t : triplets) {
    if (t.row < 1 || t.row > n || t.col < 1 || t.col > n) {
      throw Error(ErrorCode::OutOfRange, "entry " + pos_str(t.row, t.col) + " outside 1.." +
                                             std::to_string(n));
    }
    const Position p{t.row, t.col};
    if (!seen.emplace(p, true).second) {
      throw Error(ErrorCode::DuplicateEntry, "entry " + pos_str(t.row, t.col) + " given twice");
    }
    if (t.value.is_negative()) {
      throw Error(ErrorCode::NegativeEntry,
                  "entry " + pos_str(t.row, t.col) + " = " + t.value.str());
    }
    if (t.value.is_zero()) continue;
    const std::size_t dist = t.row > t.col ? t.row - t.col : t.col - t.row;
    if (dist > k) {
      throw Error(ErrorCode::OutOfBand, "entry " + pos_str(t.row, t.col) +
                                            " lies outside half-width " + std::to_string(k));
    }
    m.entries_.emplace(p, t.value);
  }
  m.index_rows();
  return m;
}

BandMatrix from_dense(const DenseMatrix& dense, std::size_t k) {
  if (dense.rows() != dense.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "band matrices are square");
  }
  std::vector<Triplet> triplets;
  for (std::size_t i = 1; i <= dense.rows(); ++i)
    for (std::size_t j = 1; j <= dense.cols(); ++j)
      if (!dense(i, j).is_zero()) triplets.push_back({i, j, dense(i, j)});
  return from_triplets(dense.rows(), k, triplets);
}

Support support(const BandMatrix& m) {
  Support s;
  s.reserve(m.nnz());
  for (const auto& [p, v] : m.entries()) s.push_back(p);
  return s;
}

BandMatrix transpose(const BandMatrix& m) {
  BandMatrix t;
  t.n_ = m.n_;
  t.k_ = m.k_;
  for (const auto& [p, v] : m.entries_) t.entries_.emplace(Position{p.col, p.row}, v);
  t.index_rows();
  return t;
}

std::vector<std::size_t> rows_of(std::span<const Position> positions) {
  std::vector<std::size_t> r;
  r.reserve(positions.size());
  for (const auto& p : positions) r.push_back(p.row);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::vector<std::size_t> cols_of(std::span<const Position> positions) {
  std::vector<std::size_t> c;
  c.reserve(positions.size());
  for (const auto& p : positions) c.push_back(p.col);
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

DenseMatrix delete_rows_cols(const DenseMatrix& m, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols) {
  std::vector<bool> drop_row(m.rows() + 1, false);
  std::vector<bool> drop_col(m.cols() + 1, false);
  for (std::size_t r : rows) {
    if (r < 1 || r > m.rows()) throw Error(ErrorCode::OutOfRange, "row " + std::to_string(r));
    drop_row[r] = true;
  }
  for (std::size_t c : cols) {
    if (c < 1 || c > m.cols()) throw Error(ErrorCode::OutOfRange, "column " + std::to_string(c));
    drop_col[c] = true;
  }
  std::vector<std::size_t> keep_rows;
  std::vector<std::size_t> keep_cols;
  for (std::size_t i = 1; i <= m.rows(); ++i)
    if (!drop_row[i]) keep_rows.push_back(i);
  for (std::size_t j = 1; j <= m.cols(); ++j)
    if (!drop_col[j]) keep_cols.push_back(j);

  DenseMatrix out(keep_rows.size(), keep_cols.size());
  for (std::size_t a = 0; a < keep_rows.size(); ++a)
    for (std::size_t b = 0; b < keep_cols.size(); ++b)
      out(a + 1, b + 1) = m(keep_rows[a], keep_cols[b]);
  return out;
}

std::size_t rational_rank(const DenseMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // Clear denominators row by row; scaling a row does not change the rank.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i + 1, j + 1).raw().get_den_mpz_t());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const mpq_class& v = m(i + 1, j + 1).raw();
      a[i][j] = v.get_num() * (l / v.get_den());
    }
  }

  // Bareiss elimination: every division below is exact.
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace rankkit
