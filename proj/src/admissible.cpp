#include "rankkit/admissible.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>

#include "rankkit/error.hpp"

namespace rankkit {

namespace {

// rows(alpha) x cols(alpha) with entry pointers and alpha membership,
// row-major. `complete` is false when the rectangle leaves the support.
struct LocalRect {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<const Rational*> value;
  std::vector<bool> in_alpha;
  bool complete = true;

  std::size_t cell(std::size_t a, std::size_t b) const { return a * cols.size() + b; }
};

Support normalized(std::span<const Position> alpha) {
  Support s(alpha.begin(), alpha.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

LocalRect local_rect(const BandMatrix& m, std::span<const Position> alpha) {
  if (alpha.empty()) throw Error(ErrorCode::EmptySubset, "admissibility of the empty set");
  const Support sorted = normalized(alpha);
  for (const auto& p : sorted) {
    if (!m.contains(p)) {
      throw Error(ErrorCode::NotInSupport, "position (" + std::to_string(p.row) + "," +
                                               std::to_string(p.col) + ") is not in the support");
    }
  }
  LocalRect r;
  r.rows = rows_of(sorted);
  r.cols = cols_of(sorted);
  r.value.resize(r.rows.size() * r.cols.size(), nullptr);
  r.in_alpha.assign(r.value.size(), false);
  for (std::size_t a = 0; a < r.rows.size(); ++a) {
    for (std::size_t b = 0; b < r.cols.size(); ++b) {
      const Position p{r.rows[a], r.cols[b]};
      if (!m.contains(p)) {
        r.complete = false;
        continue;
      }
      r.value[r.cell(a, b)] = &m.at(p);
      r.in_alpha[r.cell(a, b)] = std::binary_search(sorted.begin(), sorted.end(), p);
    }
  }
  return r;
}

std::optional<Witness> verified(const BandMatrix& m, std::span<const Position> alpha,
                                Semiring kind, Witness w) {
  if (!check_witness(m, alpha, kind, w)) {
    throw Error(ErrorCode::Internal, "constructed witness failed exact verification");
  }
  return w;
}

}  // namespace

Window window_of(const BandMatrix& m, Position anchor) {
  const std::size_t span = 2 * m.k();
  const auto lo = [&](std::size_t x) { return x > span ? x - span : std::size_t{1}; };
  const auto hi = [&](std::size_t x) { return std::min(m.n(), x + span); };
  return Window{anchor, lo(anchor.row), hi(anchor.row), lo(anchor.col), hi(anchor.col)};
}

std::optional<Witness> t_admissible(const BandMatrix& m, std::span<const Position> alpha,
                                    OpCounter* ops) {
  const LocalRect r = local_rect(m, alpha);
  if (!r.complete) return std::nullopt;

  const std::size_t p = r.rows.size();
  const std::size_t q = r.cols.size();
  const std::size_t vertices = p + q;

  // Equality graph: row a is vertex a, column b is vertex p + b. Within a
  // component every value is fixed up to one scale lambda: rows carry
  // base * lambda, columns carry base / lambda.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(vertices);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      if (!r.in_alpha[r.cell(a, b)]) continue;
      adj[a].emplace_back(p + b, r.cell(a, b));
      adj[p + b].emplace_back(a, r.cell(a, b));
    }
  }
  std::vector<Rational> base(vertices);
  std::vector<std::size_t> comp(vertices, vertices);
  std::size_t components = 0;
  for (std::size_t root = 0; root < vertices; ++root) {
    if (comp[root] != vertices) continue;
    comp[root] = components;
    base[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t x = queue.front();
      queue.pop_front();
      for (const auto& [y, cell] : adj[x]) {
        if (comp[y] != vertices) continue;
        comp[y] = components;
        base[y] = *r.value[cell] / base[x];
        tick(ops);
        queue.push_back(y);
      }
    }
    ++components;
  }
  // Every equality cycle must have product 1.
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      if (!r.in_alpha[r.cell(a, b)]) continue;
      tick(ops, 2);
      if (base[a] * base[p + b] != *r.value[r.cell(a, b)]) return std::nullopt;
    }
  }

  // Strict constraints lambda_P / lambda_Q < w for a cell outside alpha with
  // row in P and column in Q. bound[Q][P] keeps the tightest w.
  std::vector<std::vector<std::optional<Rational>>> bound(
      components, std::vector<std::optional<Rational>>(components));
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const std::size_t c = r.cell(a, b);
      if (r.in_alpha[c]) continue;
      const std::size_t row_comp = comp[a];
      const std::size_t col_comp = comp[p + b];
      Rational w = *r.value[c] / (base[a] * base[p + b]);
      tick(ops, 3);
      if (row_comp == col_comp) {
        if (w <= Rational(1)) return std::nullopt;
        continue;
      }
      auto& slot = bound[col_comp][row_comp];
      if (!slot || w < *slot) slot = std::move(w);
    }
  }

  // Min-product closure; dist[i][i] becomes the cheapest cycle through i.
  // A cycle with product <= 1 makes the strict system infeasible.
  auto dist = bound;
  const auto has_bad_cycle = [&] {
    for (std::size_t i = 0; i < components; ++i) {
      if (dist[i][i] && *dist[i][i] <= Rational(1)) return true;
    }
    return false;
  };
  for (std::size_t via = 0; via < components; ++via) {
    for (std::size_t i = 0; i < components; ++i) {
      if (!dist[i][via]) continue;
      for (std::size_t j = 0; j < components; ++j) {
        if (!dist[via][j]) continue;
        Rational cand = *dist[i][via] * *dist[via][j];
        tick(ops, 2);
        if (!dist[i][j] || cand < *dist[i][j]) dist[i][j] = std::move(cand);
      }
    }
    if (has_bad_cycle()) return std::nullopt;
  }

  // Shrink every bound by delta so that all cycles keep product >= 1; then a
  // Bellman-Ford pass from a virtual source gives lambda with
  // lambda_P <= delta * w * lambda_Q < w * lambda_Q.
  std::optional<Rational> cheapest;
  for (std::size_t i = 0; i < components; ++i) {
    if (dist[i][i] && (!cheapest || *dist[i][i] < *cheapest)) cheapest = dist[i][i];
  }
  Rational delta(1, 2);
  if (cheapest) {
    const Rational slack = Rational(1) - Rational(1) / *cheapest;
    delta = Rational(1) - slack / Rational(static_cast<long>(2 * components));
    tick(ops, 3);
  }
  std::vector<Rational> lambda(components, Rational(1));
  for (std::size_t pass = 0; pass < components; ++pass) {
    bool changed = false;
    for (std::size_t from = 0; from < components; ++from) {
      for (std::size_t to = 0; to < components; ++to) {
        if (!bound[from][to]) continue;
        Rational cand = *bound[from][to] * delta * lambda[from];
        tick(ops, 3);
        if (cand < lambda[to]) {
          lambda[to] = std::move(cand);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  Witness w;
  w.u.reserve(p);
  w.v.reserve(q);
  for (std::size_t a = 0; a < p; ++a) w.u.push_back(base[a] * lambda[comp[a]]);
  for (std::size_t b = 0; b < q; ++b) w.v.push_back(base[p + b] / lambda[comp[p + b]]);
  tick(ops, p + q);
  return verified(m, alpha, Semiring::Tropical, std::move(w));
}

std::optional<Witness> f_admissible(const BandMatrix& m, std::span<const Position> alpha,
                                    OpCounter* ops) {
  const LocalRect r = local_rect(m, alpha);
  for (const auto* v : r.value) {
    if (v != nullptr) check_carrier(Semiring::Fuzzy, *v);
  }
  if (!r.complete) return std::nullopt;

  // Any witness dominates the row/column maxima over alpha, and lowering a
  // witness value never breaks an equality or a strict inequality. So alpha
  // is admissible iff these maxima themselves work.
  const std::size_t p = r.rows.size();
  const std::size_t q = r.cols.size();
  Witness w{std::vector<Rational>(p), std::vector<Rational>(q)};
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const std::size_t c = r.cell(a, b);
      if (!r.in_alpha[c]) continue;
      w.u[a] = max(w.u[a], *r.value[c]);
      w.v[b] = max(w.v[b], *r.value[c]);
      tick(ops, 2);
    }
  }
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const std::size_t c = r.cell(a, b);
      const Rational& reach = min(w.u[a], w.v[b]);
      tick(ops, 2);
      if (r.in_alpha[c] ? reach != *r.value[c] : !(reach < *r.value[c])) return std::nullopt;
    }
  }
  return verified(m, alpha, Semiring::Fuzzy, std::move(w));
}

bool boolean_admissible(const BandMatrix& m, std::span<const Position> alpha) {
  const LocalRect r = local_rect(m, alpha);
  if (!r.complete) return false;
  return std::all_of(r.in_alpha.begin(), r.in_alpha.end(), [](bool b) { return b; });
}

std::optional<Witness> admissible(const BandMatrix& m, std::span<const Position> alpha,
                                  Semiring kind, OpCounter* ops) {
  switch (kind) {
    case Semiring::Tropical: return t_admissible(m, alpha, ops);
    case Semiring::Fuzzy: return f_admissible(m, alpha, ops);
    case Semiring::Boolean: {
      if (!boolean_admissible(m, alpha)) return std::nullopt;
      const Support s = normalized(alpha);
      return Witness{std::vector<Rational>(rows_of(s).size(), Rational(1)),
                     std::vector<Rational>(cols_of(s).size(), Rational(1))};
    }
    case Semiring::Nonnegative: break;
  }
  throw Error(ErrorCode::PreconditionViolated,
              "admissibility is defined for boolean, fuzzy and tropical only");
}

bool check_witness(const BandMatrix& m, std::span<const Position> alpha, Semiring kind,
                   const Witness& w) {
  if (alpha.empty()) return false;
  const Support sorted = normalized(alpha);
  for (const auto& p : sorted)
    if (!m.contains(p)) return false;
  const LocalRect r = local_rect(m, sorted);
  if (!r.complete) return false;
  if (w.u.size() != r.rows.size() || w.v.size() != r.cols.size()) return false;
  for (const auto* vec : {&w.u, &w.v}) {
    for (const auto& x : *vec) {
      if (!x.is_positive()) return false;
      if (kind == Semiring::Fuzzy && Rational(1) < x) return false;
      if (kind == Semiring::Boolean && x != Rational(1)) return false;
    }
  }
  for (std::size_t a = 0; a < r.rows.size(); ++a) {
    for (std::size_t b = 0; b < r.cols.size(); ++b) {
      const std::size_t c = r.cell(a, b);
      const Rational q = kind == Semiring::Fuzzy ? min(w.u[a], w.v[b]) : w.u[a] * w.v[b];
      if (kind == Semiring::Boolean) {
        if (!r.in_alpha[c]) return false;
        continue;
      }
      if (r.in_alpha[c] ? q != *r.value[c] : !(q < *r.value[c])) return false;
    }
  }
  return true;
}

std::vector<AdmissibleSet> enumerate_maximal_admissible(const BandMatrix& m, Semiring kind,
                                                        EnumerationStats* stats,
                                                        OpCounter* ops) {
  if (kind == Semiring::Nonnegative) {
    throw Error(ErrorCode::PreconditionViolated, "no admissible-set model for nonneg");
  }
  check_carrier(kind, m);
  EnumerationStats local;
  std::vector<AdmissibleSet> found;
  const std::size_t n = m.n();
  const std::size_t k = m.k();

  // Each rectangle I' x J' inside the support is visited once, from its
  // corner (min I', min J'). With (i, j) in the rectangle the band forces
  // I' within [i, j + k] and J' within [j, i + k].
  for (const auto& [anchor, value] : m.entries()) {
    const std::size_t i = anchor.row;
    const std::size_t j = anchor.col;
    std::vector<std::size_t> row_cand;
    std::vector<std::size_t> col_cand;
    for (std::size_t r = i + 1; r <= std::min(n, j + k); ++r)
      if (m.contains({r, j})) row_cand.push_back(r);
    for (std::size_t c = j + 1; c <= std::min(n, i + k); ++c)
      if (m.contains({i, c})) col_cand.push_back(c);

    for (std::uint64_t rmask = 0; rmask < (std::uint64_t{1} << row_cand.size()); ++rmask) {
      std::vector<std::size_t> rows{i};
      for (std::size_t t = 0; t < row_cand.size(); ++t)
        if ((rmask >> t) & 1U) rows.push_back(row_cand[t]);
      for (std::uint64_t cmask = 0; cmask < (std::uint64_t{1} << col_cand.size()); ++cmask) {
        std::vector<std::size_t> cols{j};
        for (std::size_t t = 0; t < col_cand.size(); ++t)
          if ((cmask >> t) & 1U) cols.push_back(col_cand[t]);

        Support cells;
        bool inside = true;
        for (std::size_t r : rows) {
          for (std::size_t c : cols) {
            if (!m.contains({r, c})) {
              inside = false;
              break;
            }
            cells.push_back({r, c});
          }
          if (!inside) break;
        }
        if (!inside) continue;
        ++local.rectangles;

        const std::size_t count = cells.size();
        if (count >= 63) {
          throw Error(ErrorCode::TooLarge, "rectangle with " + std::to_string(count) + " cells");
        }
        std::vector<std::uint64_t> row_bits(rows.size(), 0);
        std::vector<std::uint64_t> col_bits(cols.size(), 0);
        for (std::size_t a = 0; a < rows.size(); ++a)
          for (std::size_t b = 0; b < cols.size(); ++b) {
            const std::uint64_t bit = std::uint64_t{1} << (a * cols.size() + b);
            row_bits[a] |= bit;
            col_bits[b] |= bit;
          }

        const std::uint64_t full = (std::uint64_t{1} << count) - 1;
        const std::uint64_t first = kind == Semiring::Boolean ? full : 1;
        for (std::uint64_t sub = first; sub <= full; ++sub) {
          const bool spans =
              std::all_of(row_bits.begin(), row_bits.end(), [&](auto b) { return (sub & b) != 0; }) &&
              std::all_of(col_bits.begin(), col_bits.end(), [&](auto b) { return (sub & b) != 0; });
          if (!spans) continue;
          Support alpha;
          for (std::size_t t = 0; t < count; ++t)
            if ((sub >> t) & 1U) alpha.push_back(cells[t]);
          ++local.candidates_tested;
          auto w = admissible(m, alpha, kind, ops);
          if (!w) continue;
          found.push_back(AdmissibleSet{std::move(alpha), kind, rows, cols, std::move(*w)});
        }
      }
    }
  }
  local.admissible_found = found.size();

  // Keep inclusion-maximal sets. A strict superset of A contains A's first
  // position, so only sets through that position need checking.
  std::map<Position, std::vector<std::size_t>> through;
  for (std::size_t s = 0; s < found.size(); ++s)
    for (const auto& p : found[s].alpha) through[p].push_back(s);

  std::vector<bool> dominated(found.size(), false);
  for (std::size_t s = 0; s < found.size(); ++s) {
    const auto& a = found[s].alpha;
    for (std::size_t t : through[a.front()]) {
      const auto& b = found[t].alpha;
      if (t != s && b.size() > a.size() && std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        dominated[s] = true;
        break;
      }
    }
  }
  std::vector<AdmissibleSet> maximal;
  for (std::size_t s = 0; s < found.size(); ++s)
    if (!dominated[s]) maximal.push_back(std::move(found[s]));
  std::sort(maximal.begin(), maximal.end(),
            [](const AdmissibleSet& x, const AdmissibleSet& y) { return x.alpha < y.alpha; });
  local.maximal = maximal.size();
  if (stats != nullptr) *stats = local;
  return maximal;
}

}  // namespace rankkit
