#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "rankkit/matrix.hpp"
#include "rankkit/rational.hpp"

namespace rankkit {

/// The four semirings, all over exact nonnegative rationals.
///  Boolean:     {0,1}, max, *
///  Fuzzy:       [0,1], max, min
///  Tropical:    Q>=0,  max, *   (multiplicative form, no logarithms)
///  Nonnegative: Q>=0,  +,   *
enum class Semiring { Boolean, Fuzzy, Tropical, Nonnegative };

std::string_view to_string(Semiring kind);
/// Accepts "boolean", "fuzzy", "tropical", "nonneg"/"nonnegative".
std::optional<Semiring> parse_semiring(std::string_view name);

Rational semiring_add(Semiring kind, const Rational& a, const Rational& b);
Rational semiring_mul(Semiring kind, const Rational& a, const Rational& b);

bool in_carrier(Semiring kind, const Rational& value);
/// Throws CarrierViolation if `value` is outside the carrier of `kind`.
void check_carrier(Semiring kind, const Rational& value);
void check_carrier(Semiring kind, const BandMatrix& m);

DenseMatrix semiring_multiply(const DenseMatrix& b, const DenseMatrix& c, Semiring kind);

/// One rank-one piece: Q(i,j) = u_i (*) v_j on rows x cols, zero elsewhere.
/// `u` is aligned with `rows`, `v` with `cols`; both index lists are sorted.
struct Summand {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<Rational> u;
  std::vector<Rational> v;
};

struct RankCertificate {
  Semiring kind = Semiring::Tropical;
  std::vector<Summand> summands;

  std::size_t size() const { return summands.size(); }
};

/// Semiring sum of all summands as an n x n matrix.
DenseMatrix certificate_matrix(const RankCertificate& cert, std::size_t n);

/// Exact check that the certificate reconstructs `a`. Never throws; a
/// malformed certificate (bad scope, non-positive witness, fuzzy value
/// above 1) simply fails.
bool verify_certificate(const BandMatrix& a, const RankCertificate& cert);

/// Factor pair (B, C) with B (*) C = certificate_matrix(cert, n). Column t of
/// B is u_t padded with zeros, row t of C is v_t padded with zeros.
std::pair<DenseMatrix, DenseMatrix> certificate_factors(const RankCertificate& cert,
                                                        std::size_t n);

}  // namespace rankkit
