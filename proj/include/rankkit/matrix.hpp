#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rankkit/rational.hpp"

namespace rankkit {

/// A 1-based (row, column) index. Ordering is row-major.
struct Position {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Sorted, duplicate-free list of positions.
using Support = std::vector<Position>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  Rational value;
};

/// Row-major rectangular matrix of rationals, 1-based accessors.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);

  /// Builds from nested rows; all rows must have equal length.
  static DenseMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rational& operator()(std::size_t i, std::size_t j) const {
    return values_[(i - 1) * cols_ + (j - 1)];
  }
  Rational& operator()(std::size_t i, std::size_t j) { return values_[(i - 1) * cols_ + (j - 1)]; }

  const Rational& at(std::size_t i, std::size_t j) const;
  DenseMatrix transposed() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> values_;
};

/// Square matrix whose nonzero entries all satisfy |i - j| <= k. Only
/// strictly positive entries are stored.
class BandMatrix {
 public:
  BandMatrix() = default;

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }

  /// Entry lookup; absent positions read as zero.
  const Rational& at(std::size_t i, std::size_t j) const;
  const Rational& at(Position p) const { return at(p.row, p.col); }
  bool contains(Position p) const { return !at(p).is_zero(); }

  const std::map<Position, Rational>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  DenseMatrix to_dense() const;

  friend bool operator==(const BandMatrix&, const BandMatrix&) = default;

 private:
  friend BandMatrix from_triplets(std::size_t, std::size_t, std::span<const Triplet>);
  friend BandMatrix transpose(const BandMatrix&);

  void index_rows();

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::map<Position, Rational> entries_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows_;  // (col, value) per row
};

/// Validating constructor. Zero-valued triplets are accepted (inside or
/// outside the band) but not stored.
BandMatrix from_triplets(std::size_t n, std::size_t k, std::span<const Triplet> triplets);

/// Reads the band of a square dense matrix; entries outside the band must be zero.
BandMatrix from_dense(const DenseMatrix& dense, std::size_t k);

Support support(const BandMatrix& m);
BandMatrix transpose(const BandMatrix& m);

/// Rows/columns of a position list, sorted and unique.
std::vector<std::size_t> rows_of(std::span<const Position> positions);
std::vector<std::size_t> cols_of(std::span<const Position> positions);

/// Removes the given (1-based) rows and columns, keeping the order of the rest.
DenseMatrix delete_rows_cols(const DenseMatrix& m, std::span<const std::size_t> rows,
                             std::span<const std::size_t> cols);

/// Conventional rank over the rationals (fraction-free elimination).
std::size_t rational_rank(const DenseMatrix& m);

}  // namespace rankkit
