#include "rankkit/semiring.hpp"

#include <map>
#include <string>
#include <unordered_map>

#include "rankkit/error.hpp"

namespace rankkit {

std::string_view to_string(Semiring kind) {
  switch (kind) {
    case Semiring::Boolean: return "boolean";
    case Semiring::Fuzzy: return "fuzzy";
    case Semiring::Tropical: return "tropical";
    case Semiring::Nonnegative: return "nonneg";
  }
  return "unknown";
}

std::optional<Semiring> parse_semiring(std::string_view name) {
  if (name == "boolean") return Semiring::Boolean;
  if (name == "fuzzy") return Semiring::Fuzzy;
  if (name == "tropical") return Semiring::Tropical;
  if (name == "nonneg" || name == "nonnegative") return Semiring::Nonnegative;
  return std::nullopt;
}

Rational semiring_add(Semiring kind, const Rational& a, const Rational& b) {
  if (kind == Semiring::Nonnegative) return a + b;
  return max(a, b);
}

Rational semiring_mul(Semiring kind, const Rational& a, const Rational& b) {
  if (kind == Semiring::Fuzzy) return min(a, b);
  return a * b;
}

bool in_carrier(Semiring kind, const Rational& value) {
  if (value.is_negative()) return false;
  switch (kind) {
    case Semiring::Boolean: return value.is_zero() || value == Rational(1);
    case Semiring::Fuzzy: return value <= Rational(1);
    case Semiring::Tropical:
    case Semiring::Nonnegative: return true;
  }
  return false;
}

void check_carrier(Semiring kind, const Rational& value) {
  if (!in_carrier(kind, value)) {
    throw Error(ErrorCode::CarrierViolation,
                "value " + value.str() + " is outside the " + std::string(to_string(kind)) +
                    " carrier");
  }
}

void check_carrier(Semiring kind, const BandMatrix& m) {
  for (const auto& [p, v] : m.entries()) {
    if (!in_carrier(kind, v)) {
      throw Error(ErrorCode::CarrierViolation,
                  "entry (" + std::to_string(p.row) + "," + std::to_string(p.col) + ") = " +
                      v.str() + " is outside the " + std::string(to_string(kind)) + " carrier");
    }
  }
}

DenseMatrix semiring_multiply(const DenseMatrix& b, const DenseMatrix& c, Semiring kind) {
  if (b.cols() != c.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + " times " +
                    std::to_string(c.rows()) + "x" + std::to_string(c.cols()));
  }
  for (std::size_t i = 1; i <= b.rows(); ++i)
    for (std::size_t t = 1; t <= b.cols(); ++t) check_carrier(kind, b(i, t));
  for (std::size_t t = 1; t <= c.rows(); ++t)
    for (std::size_t j = 1; j <= c.cols(); ++j) check_carrier(kind, c(t, j));

  DenseMatrix out(b.rows(), c.cols());
  for (std::size_t i = 1; i <= b.rows(); ++i) {
    for (std::size_t j = 1; j <= c.cols(); ++j) {
      Rational acc;
      for (std::size_t t = 1; t <= b.cols(); ++t) {
        acc = semiring_add(kind, acc, semiring_mul(kind, b(i, t), c(t, j)));
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

namespace {

bool summand_well_formed(const Summand& s, Semiring kind, std::size_t n) {
  if (s.rows.size() != s.u.size() || s.cols.size() != s.v.size()) return false;
  for (std::size_t i : s.rows)
    if (i < 1 || i > n) return false;
  for (std::size_t j : s.cols)
    if (j < 1 || j > n) return false;
  for (const auto* vec : {&s.u, &s.v}) {
    for (const auto& x : *vec) {
      if (!x.is_positive()) return false;
      if (kind == Semiring::Fuzzy && Rational(1) < x) return false;
      if (kind == Semiring::Boolean && x != Rational(1)) return false;
    }
  }
  return true;
}

}  // namespace

DenseMatrix certificate_matrix(const RankCertificate& cert, std::size_t n) {
  DenseMatrix out(n, n);
  for (const auto& s : cert.summands) {
    if (s.rows.size() != s.u.size() || s.cols.size() != s.v.size()) {
      throw Error(ErrorCode::DimensionMismatch, "witness length differs from its scope");
    }
    for (std::size_t a = 0; a < s.rows.size(); ++a) {
      for (std::size_t b = 0; b < s.cols.size(); ++b) {
        const std::size_t i = s.rows[a];
        const std::size_t j = s.cols[b];
        if (i < 1 || i > n || j < 1 || j > n) {
          throw Error(ErrorCode::OutOfRange, "summand scope exceeds dimension " + std::to_string(n));
        }
        out(i, j) = semiring_add(cert.kind, out(i, j), semiring_mul(cert.kind, s.u[a], s.v[b]));
      }
    }
  }
  return out;
}

bool verify_certificate(const BandMatrix& a, const RankCertificate& cert) {
  // Sparse accumulation; equivalent to comparing certificate_matrix with a.
  std::unordered_map<std::size_t, Rational> acc;
  const std::size_t stride = a.n() + 1;
  for (const auto& s : cert.summands) {
    if (!summand_well_formed(s, cert.kind, a.n())) return false;
    for (std::size_t x = 0; x < s.rows.size(); ++x) {
      for (std::size_t y = 0; y < s.cols.size(); ++y) {
        const Position p{s.rows[x], s.cols[y]};
        if (!a.contains(p)) return false;  // summands are positive on their scope
        const Rational q = semiring_mul(cert.kind, s.u[x], s.v[y]);
        auto [it, inserted] = acc.try_emplace(p.row * stride + p.col, q);
        if (!inserted) it->second = semiring_add(cert.kind, it->second, q);
      }
    }
  }
  if (acc.size() != a.nnz()) return false;
  for (const auto& [p, v] : a.entries()) {
    const auto it = acc.find(p.row * stride + p.col);
    if (it == acc.end() || it->second != v) return false;
  }
  return true;
}

std::pair<DenseMatrix, DenseMatrix> certificate_factors(const RankCertificate& cert,
                                                        std::size_t n) {
  const std::size_t r = cert.summands.size();
  DenseMatrix b(n, r);
  DenseMatrix c(r, n);
  for (std::size_t t = 0; t < r; ++t) {
    const auto& s = cert.summands[t];
    for (std::size_t a = 0; a < s.rows.size(); ++a) b(s.rows[a], t + 1) = s.u[a];
    for (std::size_t a = 0; a < s.cols.size(); ++a) c(t + 1, s.cols[a]) = s.v[a];
  }
  return {std::move(b), std::move(c)};
}

}  // namespace rankkit
