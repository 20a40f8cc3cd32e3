#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "rankkit/band_cover.hpp"
#include "rankkit/error.hpp"
#include "rankkit/oracle.hpp"

namespace rankkit::oracle {

namespace {

struct Rect {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<Rational> value;  // row-major
  std::vector<bool> in_alpha;
};

// nullopt when rows(alpha) x cols(alpha) leaves the support.
std::optional<Rect> rect_of(const BandMatrix& m, std::span<const Position> alpha) {
  if (alpha.empty()) throw Error(ErrorCode::EmptySubset, "empty subset");
  Support sorted(alpha.begin(), alpha.end());
  std::sort(sorted.begin(), sorted.end());
  for (const auto& p : sorted)
    if (!m.contains(p)) throw Error(ErrorCode::NotInSupport, "position outside the support");
  Rect r;
  r.rows = rows_of(sorted);
  r.cols = cols_of(sorted);
  for (std::size_t i : r.rows) {
    for (std::size_t j : r.cols) {
      if (!m.contains({i, j})) return std::nullopt;
      r.value.push_back(m.at(i, j));
      r.in_alpha.push_back(std::binary_search(sorted.begin(), sorted.end(), Position{i, j}));
    }
  }
  return r;
}

// x_a <= factor * x_b, or < when strict.
struct Bound {
  Rational factor;
  bool strict = false;
};

}  // namespace

bool tropical_admissible(const BandMatrix& m, std::span<const Position> alpha) {
  const auto rect = rect_of(m, alpha);
  if (!rect) return false;
  const std::size_t p = rect->rows.size();
  const std::size_t q = rect->cols.size();
  const std::size_t vars = p + q;  // u_0..u_{p-1}, then y_b = 1 / v_b

  std::vector<std::vector<std::optional<Bound>>> bound(
      vars, std::vector<std::optional<Bound>>(vars));
  bool ok = true;
  auto add = [&](std::size_t a, std::size_t b, Rational factor, bool strict) {
    if (a == b) {
      // 1 <= factor (or 1 < factor) must hold for every positive x.
      if (factor < Rational(1) || (strict && factor == Rational(1))) ok = false;
      return;
    }
    auto& slot = bound[a][b];
    if (!slot || factor < slot->factor || (factor == slot->factor && strict && !slot->strict)) {
      slot = Bound{std::move(factor), strict};
    }
  };

  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const Rational& v = rect->value[a * q + b];
      if (rect->in_alpha[a * q + b]) {
        // u_a * v_b = M  <=>  u_a = M * y_b
        add(a, p + b, v, false);
        add(p + b, a, Rational(1) / v, false);
      } else {
        add(a, p + b, v, true);
      }
    }
  }

  for (std::size_t x = 0; x < vars && ok; ++x) {
    std::vector<std::pair<std::size_t, Bound>> below;  // a <= c * x
    std::vector<std::pair<std::size_t, Bound>> above;  // x <= c * b
    for (std::size_t a = 0; a < vars; ++a) {
      if (bound[a][x]) below.emplace_back(a, *bound[a][x]);
      if (bound[x][a]) above.emplace_back(a, *bound[x][a]);
      bound[a][x].reset();
      bound[x][a].reset();
    }
    for (const auto& [a, lo] : below)
      for (const auto& [b, hi] : above) add(a, b, lo.factor * hi.factor, lo.strict || hi.strict);
  }
  return ok;
}

bool fuzzy_admissible(const BandMatrix& m, std::span<const Position> alpha) {
  const auto rect = rect_of(m, alpha);
  for (const auto& [pos, v] : m.entries()) {
    (void)pos;
    check_carrier(Semiring::Fuzzy, v);
  }
  if (!rect) return false;
  const std::size_t p = rect->rows.size();
  const std::size_t q = rect->cols.size();

  struct Var {
    std::optional<Rational> fixed;
    std::optional<Rational> at_least;
    std::optional<Rational> below;  // strict upper bound
  };
  const auto consistent = [](const Var& v) {
    if (v.fixed) {
      if (Rational(1) < *v.fixed) return false;
      if (v.at_least && *v.fixed < *v.at_least) return false;
      if (v.below && !(*v.fixed < *v.below)) return false;
      return true;
    }
    if (v.at_least && Rational(1) < *v.at_least) return false;
    if (v.at_least && v.below && !(*v.at_least < *v.below)) return false;
    return true;
  };

  std::vector<Var> vars(p + q);
  const std::size_t cells = p * q;
  std::function<bool(std::size_t)> assign = [&](std::size_t c) -> bool {
    if (c == cells) return true;
    const std::size_t a = c / q;
    const std::size_t b = p + c % q;
    const Rational& v = rect->value[c];
    for (int side = 0; side < 2; ++side) {
      const std::size_t tight = side == 0 ? a : b;
      const std::size_t other = side == 0 ? b : a;
      const Var saved_tight = vars[tight];
      const Var saved_other = vars[other];
      bool fine = true;
      if (rect->in_alpha[c]) {
        // min(u, v) = M: one side equals M, the other is at least M.
        if (vars[tight].fixed && *vars[tight].fixed != v) fine = false;
        vars[tight].fixed = v;
        if (!vars[other].at_least || *vars[other].at_least < v) vars[other].at_least = v;
      } else {
        // min(u, v) < M: one side is strictly below M.
        if (!vars[tight].below || v < *vars[tight].below) vars[tight].below = v;
      }
      if (fine && consistent(vars[tight]) && consistent(vars[other]) && assign(c + 1)) return true;
      vars[tight] = saved_tight;
      vars[other] = saved_other;
    }
    return false;
  };
  return assign(0);
}

std::vector<Support> all_admissible(const BandMatrix& m, Semiring kind) {
  if (kind == Semiring::Nonnegative) {
    throw Error(ErrorCode::PreconditionViolated, "no admissible-set model for nonneg");
  }
  const std::size_t n = m.n();
  if (n > 16) throw Error(ErrorCode::TooLarge, "subset scan limited to n <= 16");
  std::vector<Support> out;
  const std::uint32_t limit = 1U << n;
  for (std::uint32_t rmask = 1; rmask < limit; ++rmask) {
    for (std::uint32_t cmask = 1; cmask < limit; ++cmask) {
      Support cells;
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) {
        if (((rmask >> i) & 1U) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (((cmask >> j) & 1U) == 0) continue;
          if (!m.contains({i + 1, j + 1})) {
            inside = false;
            break;
          }
          cells.push_back({i + 1, j + 1});
        }
      }
      if (!inside) continue;
      const std::uint64_t full = (std::uint64_t{1} << cells.size()) - 1;
      for (std::uint64_t sub = (kind == Semiring::Boolean ? full : 1); sub <= full; ++sub) {
        Support alpha;
        std::uint32_t rows_hit = 0;
        std::uint32_t cols_hit = 0;
        for (std::size_t t = 0; t < cells.size(); ++t) {
          if (((sub >> t) & 1U) == 0) continue;
          alpha.push_back(cells[t]);
          rows_hit |= 1U << (cells[t].row - 1);
          cols_hit |= 1U << (cells[t].col - 1);
        }
        if (rows_hit != rmask || cols_hit != cmask) continue;
        bool ok = false;
        switch (kind) {
          case Semiring::Boolean: ok = true; break;  // full rectangle inside the support
          case Semiring::Tropical: ok = tropical_admissible(m, alpha); break;
          case Semiring::Fuzzy: ok = fuzzy_admissible(m, alpha); break;
          case Semiring::Nonnegative: break;
        }
        if (ok) out.push_back(std::move(alpha));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Support> maximal_only(std::vector<Support> family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::vector<Support> out;
  for (std::size_t a = 0; a < family.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < family.size() && !dominated; ++b) {
      dominated = a != b && family[b].size() > family[a].size() &&
                  std::includes(family[b].begin(), family[b].end(), family[a].begin(),
                                family[a].end());
    }
    if (!dominated) out.push_back(family[a]);
  }
  return out;
}

}  // namespace rankkit::oracle

namespace rankkit {

std::size_t brute_force_band_rank(const BandMatrix& m, Semiring kind, std::size_t max_n) {
  if (m.n() > max_n) {
    throw Error(ErrorCode::TooLarge,
                "brute force limited to n <= " + std::to_string(max_n) + ", got " +
                    std::to_string(m.n()));
  }
  if (kind == Semiring::Nonnegative) {
    throw Error(ErrorCode::PreconditionViolated, "use pattern_oracle_nnr for nonneg");
  }
  check_carrier(kind, m);
  if (m.is_zero()) return 0;

  const Support elements = support(m);
  std::vector<std::vector<std::size_t>> members;
  for (const auto& set : oracle::maximal_only(oracle::all_admissible(m, kind))) {
    std::vector<std::size_t> idx;
    for (const auto& p : set) {
      idx.push_back(static_cast<std::size_t>(
          std::lower_bound(elements.begin(), elements.end(), p) - elements.begin()));
    }
    members.push_back(std::move(idx));
  }
  const CoverInstance inst = cover_instance_from_members(elements.size(), std::move(members));
  return solve_cover_exhaustive(inst, std::numeric_limits<std::size_t>::max()).size();
}

}  // namespace rankkit
