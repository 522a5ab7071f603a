#pragma once

// Hereditary and saturated vertex sets, the lattice they form, subquotient
// graphs and maximal chains.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "gca/condition_k.hpp"
#include "gca/graph.hpp"
#include "gca/vertex_set.hpp"
#include "gca/walks.hpp"

namespace gca {

struct HSFlags {
  bool hereditary = false;
  bool saturated = false;
  friend bool operator==(const HSFlags&, const HSFlags&) = default;
};

/// A vertex set together with its hereditary/saturated status.
struct HSSet {
  VertexSet subset;
  bool hereditary = false;
  bool saturated = false;
};

namespace detail {

inline void check_universe(const Graph& g, const VertexSet& s) {
  if (s.universe() != g.vertex_count()) throw GraphError("vertex set does not belong to this graph");
}

// One hereditary step: pull in s(e) for every edge e entering the set.
inline bool hereditary_step(const Graph& g, VertexSet& s) {
  bool changed = false;
  for (const Edge& e : g.edges()) {
    if (s.contains(e.dst) && !s.contains(e.src)) {
      s.insert(e.src);
      changed = true;
    }
  }
  return changed;
}

// One saturation step: add every receiving vertex whose edge sources all lie in the set.
inline bool saturation_step(const Graph& g, VertexSet& s) {
  bool changed = false;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (s.contains(v) || g.in_edges(v).empty()) continue;
    bool all_in = std::all_of(g.in_edges(v).begin(), g.in_edges(v).end(),
                              [&](EdgeIndex e) { return s.contains(g.src(e)); });
    if (all_in) {
      s.insert(v);
      changed = true;
    }
  }
  return changed;
}

}  // namespace detail

/// Hereditary: every edge entering S starts in S. Saturated: every vertex
/// that receives edges, all of whose edge sources lie in S, is in S.
inline HSFlags classify_subset(const Graph& g, const VertexSet& s) {
  detail::check_universe(g, s);
  HSFlags f{true, true};
  for (const Edge& e : g.edges()) {
    if (s.contains(e.dst) && !s.contains(e.src)) {
      f.hereditary = false;
      break;
    }
  }
  VertexSet probe = s;
  f.saturated = !detail::saturation_step(g, probe);
  return f;
}

inline bool is_hereditary_saturated(const Graph& g, const VertexSet& s) {
  HSFlags f = classify_subset(g, s);
  return f.hereditary && f.saturated;
}

/// Least hereditary and saturated superset of `s`.
inline HSSet hs_closure(const Graph& g, const VertexSet& s) {
  detail::check_universe(g, s);
  VertexSet h = s;
  bool changed = true;
  while (changed) {
    changed = false;
    while (detail::hereditary_step(g, h)) changed = true;
    if (detail::saturation_step(g, h)) changed = true;
  }
  return HSSet{h, true, true};
}

/// All hereditary and saturated subsets, ordered by size and then
/// lexicographically. Bottom is the empty set, top is the full vertex set.
class IdealLattice {
 public:
  IdealLattice() = default;
  explicit IdealLattice(std::vector<VertexSet> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end(), [](const VertexSet& a, const VertexSet& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return lex_less(a, b);
    });
  }

  std::size_t size() const { return elements_.size(); }
  const std::vector<VertexSet>& elements() const { return elements_; }
  const VertexSet& operator[](std::size_t i) const { return elements_.at(i); }

  bool contains(const VertexSet& s) const {
    return std::find(elements_.begin(), elements_.end(), s) != elements_.end();
  }
  /// Inclusion order.
  bool leq(std::size_t i, std::size_t j) const { return elements_.at(i).subset_of(elements_.at(j)); }

  /// Elements strictly between `lo` and `hi`.
  std::vector<VertexSet> strictly_between(const VertexSet& lo, const VertexSet& hi) const {
    std::vector<VertexSet> out;
    for (const VertexSet& s : elements_) {
      if (lo.subset_of(s) && s.subset_of(hi) && s != lo && s != hi) out.push_back(s);
    }
    return out;
  }

 private:
  std::vector<VertexSet> elements_;
};

inline constexpr std::size_t kExhaustiveLatticeLimit = 20;

/// Scans all 2^n subsets when n <= `exhaustive_limit`; otherwise closes the
/// closures of singletons under joins to a fixpoint (every hereditary
/// saturated set is the join of the closures of its members).
inline IdealLattice enumerate_hs(const Graph& g, std::size_t exhaustive_limit = kExhaustiveLatticeLimit) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexSet> found;
  if (n <= exhaustive_limit && n < 64) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      VertexSet s = VertexSet::from_mask(n, mask);
      if (is_hereditary_saturated(g, s)) found.push_back(std::move(s));
    }
    return IdealLattice(std::move(found));
  }

  auto key = [](const VertexSet& s) { return s.mask(); };
  std::set<std::vector<bool>> seen;
  std::vector<VertexSet> frontier;
  auto add = [&](VertexSet s) {
    if (seen.insert(key(s)).second) {
      found.push_back(s);
      frontier.push_back(std::move(s));
    }
  };
  add(hs_closure(g, VertexSet(n)).subset);
  std::vector<VertexSet> generators;
  for (VertexIndex v = 0; v < n; ++v) {
    VertexSet c = hs_closure(g, VertexSet(n, {v})).subset;
    generators.push_back(c);
    add(c);
  }
  while (!frontier.empty()) {
    VertexSet s = std::move(frontier.back());
    frontier.pop_back();
    for (const VertexSet& gen : generators) {
      if (gen.subset_of(s)) continue;
      add(hs_closure(g, s | gen).subset);
    }
  }
  return IdealLattice(std::move(found));
}

/// E_H minus H': vertices H \ H', edges e with r(e) in H and s(e) not in H'.
/// With H = all vertices this is the quotient graph E \ H'; with H' empty it
/// is E_H. Vertex and edge ids are preserved.
inline Graph subquotient_graph(const Graph& g, const VertexSet& h, const VertexSet& h_lower) {
  detail::check_universe(g, h);
  detail::check_universe(g, h_lower);
  if (!h_lower.subset_of(h)) throw PreconditionError("subquotient_graph: H' is not contained in H");
  if (!is_hereditary_saturated(g, h)) throw PreconditionError("subquotient_graph: H is not hereditary and saturated");
  if (!is_hereditary_saturated(g, h_lower)) {
    throw PreconditionError("subquotient_graph: H' is not hereditary and saturated");
  }
  std::vector<bool> keep_v(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) keep_v[v] = h.contains(v) && !h_lower.contains(v);
  std::vector<bool> keep_e(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    keep_e[e] = h.contains(g.dst(e)) && !h_lower.contains(g.src(e));
  }
  return g.subgraph(keep_v, keep_e);
}

/// E_H.
inline Graph restriction_graph(const Graph& g, const VertexSet& h) {
  return subquotient_graph(g, h, VertexSet(g.vertex_count()));
}

/// E \ H.
inline Graph quotient_graph(const Graph& g, const VertexSet& h) {
  return subquotient_graph(g, VertexSet::all(g.vertex_count()), h);
}

/// Strictly increasing chain from the empty set to all vertices with no
/// hereditary saturated set strictly between consecutive members.
struct CompositionChain {
  std::vector<VertexSet> chain;
};

/// Greedy maximal chain: from each member, step to the inclusion-minimal
/// strictly larger lattice element, ties broken by lexicographically least
/// vertex set. Requires Condition (K).
inline CompositionChain composition_series(const Graph& g, const IdealLattice& lattice) {
  const std::size_t n = g.vertex_count();
  CompositionChain out;
  VertexSet current(n);
  out.chain.push_back(current);
  const VertexSet top = VertexSet::all(n);
  while (current != top) {
    std::vector<VertexSet> above;
    for (const VertexSet& s : lattice.elements()) {
      if (current.subset_of(s) && s != current) above.push_back(s);
    }
    std::vector<VertexSet> minimal;
    for (const VertexSet& s : above) {
      bool is_min = std::none_of(above.begin(), above.end(),
                                 [&](const VertexSet& t) { return t != s && t.subset_of(s); });
      if (is_min) minimal.push_back(s);
    }
    if (minimal.empty()) throw InternalError("composition_series: lattice has no element above a non-top member");
    current = *std::min_element(minimal.begin(), minimal.end(), lex_less);
    out.chain.push_back(current);
  }
  for (std::size_t i = 1; i < out.chain.size(); ++i) {
    Graph factor = subquotient_graph(g, out.chain[i], out.chain[i - 1]);
    if (enumerate_hs(factor).size() != 2) {
      throw InternalError("composition_series: factor " + std::to_string(i) + " is not simple");
    }
  }
  return out;
}

inline CompositionChain composition_series(const Graph& g) {
  ConditionKVerdict k = condition_k(g);
  if (!k.holds) {
    throw PreconditionError("composition_series: Condition (K) fails at vertex \"" +
                            g.vertex_id(*k.witness) + "\"");
  }
  return composition_series(g, enumerate_hs(g));
}

}  // namespace gca
