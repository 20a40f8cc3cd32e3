#include "rankkit/band_cover.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <string>

#include "rankkit/error.hpp"

namespace rankkit {

namespace {

void assign_layout(CoverInstance& inst) {
  const std::size_t m = inst.element_count;
  inst.incidence.assign(m, {});
  for (std::size_t s = 0; s < inst.members.size(); ++s)
    for (std::size_t e : inst.members[s]) inst.incidence[e].push_back(s);

  // u_1, sets first seen with u_1, u_2, ... ; sets are sorted by first
  // element so each group is a contiguous index range.
  inst.element_layout.assign(m, 0);
  inst.set_layout.assign(inst.members.size(), 0);
  std::size_t pos = 0;
  std::size_t next_set = 0;
  for (std::size_t e = 0; e < m; ++e) {
    inst.element_layout[e] = ++pos;
    while (next_set < inst.members.size() && inst.members[next_set].front() == e) {
      inst.set_layout[next_set++] = ++pos;
    }
  }
  inst.spread_bound = 0;
  for (std::size_t s = 0; s < inst.members.size(); ++s) {
    for (std::size_t e : inst.members[s]) {
      const std::size_t a = inst.element_layout[e];
      const std::size_t b = inst.set_layout[s];
      inst.spread_bound = std::max(inst.spread_bound, a > b ? a - b : b - a);
    }
  }
}

// Coverage masks live in flat arrays, `words` 64-bit words per state.
bool test_bit(const std::uint64_t* mask, std::size_t i) { return ((mask[i / 64] >> (i % 64)) & 1U) != 0; }
void set_bit(std::uint64_t* mask, std::size_t i) { mask[i / 64] |= std::uint64_t{1} << (i % 64); }

void shift_right_one(const std::uint64_t* in, std::uint64_t* out, std::size_t words) {
  for (std::size_t w = 0; w < words; ++w) {
    out[w] = in[w] >> 1;
    if (w + 1 < words) out[w] |= in[w + 1] << 63;
  }
}

void require_coverable(const CoverInstance& inst) {
  for (std::size_t e = 0; e < inst.element_count; ++e) {
    if (inst.incidence[e].empty()) {
      throw Error(ErrorCode::Uncoverable, "element " + std::to_string(e) + " lies in no set");
    }
  }
}

}  // namespace

CoverInstance cover_instance_from_members(std::size_t element_count,
                                          std::vector<std::vector<std::size_t>> members) {
  CoverInstance inst;
  inst.element_count = element_count;
  for (auto& s : members) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= element_count) {
      throw Error(ErrorCode::OutOfRange, "set member " + std::to_string(s.back()));
    }
  }
  std::erase_if(members, [](const auto& s) { return s.empty(); });
  std::sort(members.begin(), members.end());
  inst.members = std::move(members);
  assign_layout(inst);
  return inst;
}

CoverInstance build_cover_instance(const BandMatrix& m, Semiring kind, EnumerationStats* stats,
                                   OpCounter* ops) {
  CoverInstance inst;
  inst.elements = support(m);
  inst.element_count = inst.elements.size();
  inst.sets = enumerate_maximal_admissible(m, kind, stats, ops);
  inst.members.reserve(inst.sets.size());
  for (const auto& set : inst.sets) {
    std::vector<std::size_t> idx;
    idx.reserve(set.alpha.size());
    for (const auto& p : set.alpha) {
      const auto it = std::lower_bound(inst.elements.begin(), inst.elements.end(), p);
      idx.push_back(static_cast<std::size_t>(it - inst.elements.begin()));
    }
    inst.members.push_back(std::move(idx));
  }
  // Sets arrive sorted by position list, which is also (first element, members) order.
  assign_layout(inst);
  return inst;
}

CoverSolution solve_cover_dp(const CoverInstance& inst, std::size_t* dp_states) {
  const std::size_t m = inst.element_count;
  if (dp_states != nullptr) *dp_states = 0;
  if (m == 0) return {};
  require_coverable(inst);

  std::size_t width = 1;
  for (const auto& s : inst.members) width = std::max(width, s.back() - s.front() + 1);
  const std::size_t words = (width + 63) / 64;

  // Steps in layout order: after element t come the decisions for sets whose
  // first element is t, then t is retired (it must be covered by then,
  // since every set containing t has been decided).
  struct Step {
    bool retire;
    std::size_t index;  // element for retire, set for decide
  };
  std::vector<Step> steps;
  steps.reserve(m + inst.members.size());
  {
    std::size_t next_set = 0;
    for (std::size_t e = 0; e < m; ++e) {
      while (next_set < inst.members.size() && inst.members[next_set].front() == e) {
        steps.push_back({false, next_set++});
      }
      steps.push_back({true, e});
    }
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  struct Edge {
    std::size_t skip = kNone;  // exclude / retire
    std::size_t take = kNone;  // include
  };
  // Only the transition graph is kept; each layer's masks are dropped once
  // the next layer has been interned.
  std::vector<std::vector<Edge>> edges(steps.size());
  std::vector<std::size_t> layer_size(steps.size() + 1, 0);
  std::vector<std::uint64_t> cur(words, 0);
  layer_size[0] = 1;

  std::vector<std::uint64_t> cand;
  std::vector<std::size_t> owner;  // 2 * state + (take ? 1 : 0)
  std::vector<std::size_t> order;
  std::vector<std::uint64_t> next;
  for (std::size_t l = 0; l < steps.size(); ++l) {
    const std::size_t count = layer_size[l];
    const Step& step = steps[l];
    cand.clear();
    owner.clear();
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t* mask = cur.data() + i * words;
      if (step.retire) {
        if (!test_bit(mask, 0)) continue;
        cand.resize(cand.size() + words);
        shift_right_one(mask, cand.data() + cand.size() - words, words);
        owner.push_back(2 * i);
      } else {
        const auto& members = inst.members[step.index];
        const std::size_t base = members.front();
        cand.insert(cand.end(), mask, mask + words);
        owner.push_back(2 * i);
        cand.insert(cand.end(), mask, mask + words);
        std::uint64_t* with = cand.data() + cand.size() - words;
        for (std::size_t e : members) set_bit(with, e - base);
        owner.push_back(2 * i + 1);
      }
    }
    const auto row = [&](std::size_t c) { return cand.data() + c * words; };
    order.resize(owner.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(row(a), row(a) + words, row(b), row(b) + words);
    });

    edges[l].assign(count, Edge{});
    next.clear();
    std::size_t id = kNone;
    for (std::size_t r = 0; r < order.size(); ++r) {
      const std::size_t c = order[r];
      if (r == 0 || !std::equal(row(c), row(c) + words, row(order[r - 1]))) {
        id = next.size() / words;
        next.insert(next.end(), row(c), row(c) + words);
      }
      Edge& e = edges[l][owner[c] / 2];
      (owner[c] % 2 ? e.take : e.skip) = id;
    }
    layer_size[l + 1] = next.size() / words;
    cur.swap(next);
  }
  if (dp_states != nullptr) {
    for (std::size_t c : layer_size) *dp_states += c;
  }

  // Backward pass: fewest additional sets needed from each state.
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 2;
  std::vector<std::vector<std::size_t>> cost(steps.size() + 1);
  cost[steps.size()].assign(layer_size[steps.size()], 0);
  for (std::size_t l = steps.size(); l-- > 0;) {
    cost[l].assign(layer_size[l], kInf);
    for (std::size_t i = 0; i < layer_size[l]; ++i) {
      const Edge& e = edges[l][i];
      if (e.skip != kNone) cost[l][i] = std::min(cost[l][i], cost[l + 1][e.skip]);
      if (e.take != kNone) cost[l][i] = std::min(cost[l][i], cost[l + 1][e.take] + 1);
    }
  }
  if (cost[0][0] >= kInf) throw Error(ErrorCode::Uncoverable, "no cover exists");

  // Forward reconstruction, preferring to take a set whenever that stays
  // optimal: this yields the lexicographically smallest minimum cover.
  CoverSolution sol;
  std::size_t state = 0;
  for (std::size_t l = 0; l < steps.size(); ++l) {
    const Edge& e = edges[l][state];
    if (e.take != kNone && cost[l + 1][e.take] + 1 == cost[l][state]) {
      sol.chosen.push_back(steps[l].index);
      state = e.take;
    } else {
      state = e.skip;
    }
  }
  return sol;
}

CoverSolution solve_cover_exhaustive(const CoverInstance& inst, std::size_t max_sets) {
  if (inst.members.size() > max_sets) {
    throw Error(ErrorCode::TooLarge, std::to_string(inst.members.size()) +
                                         " sets exceed the exhaustive limit of " +
                                         std::to_string(max_sets));
  }
  const std::size_t m = inst.element_count;
  if (m == 0) return {};
  require_coverable(inst);

  std::size_t largest = 1;
  for (const auto& s : inst.members) largest = std::max(largest, s.size());

  std::vector<std::size_t> hits(m, 0);
  std::size_t uncovered = m;
  std::vector<std::size_t> current;
  std::vector<std::size_t> best;
  std::size_t best_size = inst.members.size() + 1;

  // Branch on the first uncovered element: some chosen set must contain it.
  std::function<void()> search = [&] {
    if (uncovered == 0) {
      if (current.size() < best_size) {
        best = current;
        best_size = current.size();
      }
      return;
    }
    const std::size_t need = (uncovered + largest - 1) / largest;
    if (current.size() + need >= best_size) return;
    std::size_t e = 0;
    while (hits[e] != 0) ++e;
    for (std::size_t s : inst.incidence[e]) {
      current.push_back(s);
      for (std::size_t x : inst.members[s])
        if (hits[x]++ == 0) --uncovered;
      search();
      for (std::size_t x : inst.members[s])
        if (--hits[x] == 0) ++uncovered;
      current.pop_back();
    }
  };
  search();

  std::sort(best.begin(), best.end());
  return CoverSolution{std::move(best)};
}

RankResult band_rank(const BandMatrix& m, Semiring kind) {
  if (kind == Semiring::Nonnegative) {
    throw Error(ErrorCode::PreconditionViolated,
                "nonnegative rank is not a cover problem; use nnr_tridiagonal");
  }
  const auto start = std::chrono::steady_clock::now();
  check_carrier(kind, m);

  RankResult result;
  result.certificate.kind = kind;
  if (!m.is_zero()) {
    EnumerationStats enumeration;
    OpCounter ops;
    const CoverInstance inst = build_cover_instance(m, kind, &enumeration, &ops);
    std::size_t states = 0;
    const CoverSolution sol = solve_cover_dp(inst, &states);
    for (std::size_t s : sol.chosen) result.certificate.summands.push_back(inst.sets[s].as_summand());
    result.rank = sol.size();
    result.stats.sets_enumerated = inst.sets.size();
    result.stats.dp_states = states;
    result.stats.arithmetic_ops = ops.count;
  }
  if (!verify_certificate(m, result.certificate)) {
    throw Error(ErrorCode::Internal, "cover certificate does not reconstruct the matrix");
  }
  result.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace rankkit
