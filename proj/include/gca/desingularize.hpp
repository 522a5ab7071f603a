#pragma once

// Tail-extended presentations of graphs with infinite receivers. A tail at
// base vertex t_0 is the infinite backwards path t_0 <- t_1 <- t_2 <- ...;
// position i >= 1 optionally receives one entry edge from a core vertex, and
// the entry sources are eventually periodic.
//
// Naming: tail vertex t_i is "<base>~i", the tail edge t_i -> t_{i-1} is
// "<base>~i~tail" and the entry edge into t_i is "<base>~i~in".

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gca/condition_k.hpp"
#include "gca/detours.hpp"
#include "gca/graph.hpp"
#include "gca/ideal_lattice.hpp"
#include "gca/vertex_set.hpp"
#include "gca/walks.hpp"

namespace gca {

struct Tail {
  VertexIndex base = 0;
  std::vector<std::optional<VertexIndex>> preperiod;
  std::vector<std::optional<VertexIndex>> period;

  /// Entry source at position `pos` >= 1.
  std::optional<VertexIndex> entry_at(std::size_t pos) const {
    if (pos == 0) return std::nullopt;
    if (pos <= preperiod.size()) return preperiod[pos - 1];
    if (period.empty()) return std::nullopt;
    return period[(pos - 1 - preperiod.size()) % period.size()];
  }

  /// Distinct non-null sources of the periodic part.
  std::vector<VertexIndex> periodic_sources() const {
    std::set<VertexIndex> s;
    for (const auto& w : period) {
      if (w) s.insert(*w);
    }
    return {s.begin(), s.end()};
  }

  friend bool operator==(const Tail&, const Tail&) = default;
};

struct TailExtendedGraph {
  Graph core;
  std::vector<Tail> tails;

  /// Length of a tail prefix that contains every non-periodic position plus
  /// `periods` full periods of every tail.
  std::size_t prefix_length(std::size_t periods) const {
    std::size_t len = 0;
    for (const Tail& t : tails) len = std::max(len, t.preperiod.size() + periods * std::max<std::size_t>(t.period.size(), 1));
    return len;
  }
};

inline std::string tail_vertex_id(const std::string& base, std::size_t i) { return base + "~" + std::to_string(i); }
inline std::string tail_edge_id(const std::string& base, std::size_t i) { return tail_vertex_id(base, i) + "~tail"; }
inline std::string entry_edge_id(const std::string& base, std::size_t i) { return tail_vertex_id(base, i) + "~in"; }

namespace detail {

// Position i when `id` has the form "<base>~i" with i >= 1.
inline std::optional<std::size_t> tail_position(const std::string& id, const std::string& base) {
  if (id.size() <= base.size() + 1 || id.compare(0, base.size(), base) != 0 || id[base.size()] != '~') {
    return std::nullopt;
  }
  std::string digits = id.substr(base.size() + 1);
  if (digits.empty() || digits.size() > 18) return std::nullopt;
  if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) return std::nullopt;
  if (digits[0] == '0') return std::nullopt;
  return std::stoull(digits);
}

}  // namespace detail

/// First collapsibility violation, or nullopt.
inline std::optional<std::string> tail_problem(const TailExtendedGraph& teg) {
  const Graph& g = teg.core;
  std::set<VertexIndex> bases;
  for (const Tail& t : teg.tails) {
    if (t.base >= g.vertex_count()) return std::string("tail base out of range");
    const std::string& base = g.vertex_id(t.base);
    if (!bases.insert(t.base).second) return "vertex \"" + base + "\" carries two tails";
    if (!g.in_edges(t.base).empty()) {
      return "not collapsible: base \"" + base + "\" receives core edge \"" + g.edge(g.in_edges(t.base).front()).id + "\"";
    }
    for (const auto* part : {&t.preperiod, &t.period}) {
      for (const auto& w : *part) {
        if (w && *w >= g.vertex_count()) return "tail at \"" + base + "\": entry source out of range";
      }
    }
    for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
      auto pos = detail::tail_position(g.vertex_id(x), base);
      if (!pos) continue;
      const std::string& id = g.vertex_id(x);
      if (!g.out_edges(x).empty()) return "not collapsible: exit at interior tail vertex \"" + id + "\"";
      if (!g.in_edges(x).empty()) return "not collapsible: extra entry into tail vertex \"" + id + "\"";
      return "core vertex \"" + id + "\" clashes with a tail vertex name";
    }
  }
  return std::nullopt;
}

inline void check_tails(const TailExtendedGraph& teg) {
  if (auto why = tail_problem(teg)) throw GraphError(*why);
}

/// Attaches a tail to every vertex receiving an omega edge. All in-edges of
/// such a vertex are rerouted: finite ones first in id order (one position
/// per unit of multiplicity), then each omega source vertex once, in id order, as the
/// period. Everything else is copied, with finite multiplicities expanded.
inline TailExtendedGraph desingularize(const MultGraph& mg) {
  std::vector<bool> infinite_receiver(mg.vertex_count(), false);
  for (const MultEdge& e : mg.edges()) {
    if (e.mult.is_omega()) infinite_receiver[e.dst] = true;
  }
  std::vector<MultEdgeSpec> kept;
  for (const MultEdge& e : mg.edges()) {
    if (!infinite_receiver[e.dst]) kept.push_back({e.id, mg.vertex_id(e.src), mg.vertex_id(e.dst), e.mult});
  }
  TailExtendedGraph out;
  out.core = MultGraph(mg.vertex_ids(), kept).expand();
  for (VertexIndex v = 0; v < mg.vertex_count(); ++v) {
    if (!infinite_receiver[v]) continue;
    Tail t;
    t.base = out.core.vertex(mg.vertex_id(v));
    for (const MultEdge& e : mg.edges()) {
      if (e.dst != v || e.mult.is_omega()) continue;
      for (std::uint64_t k = 0; k < e.mult.value(); ++k) t.preperiod.push_back(out.core.vertex(mg.vertex_id(e.src)));
    }
    std::vector<bool> omega_source(mg.vertex_count(), false);
    for (const MultEdge& e : mg.edges()) {
      if (e.dst == v && e.mult.is_omega()) omega_source[e.src] = true;
    }
    for (VertexIndex w = 0; w < mg.vertex_count(); ++w) {
      if (omega_source[w]) t.period.push_back(out.core.vertex(mg.vertex_id(w)));
    }
    out.tails.push_back(std::move(t));
  }
  return out;
}

/// Core plus tail positions 1..length.
inline Graph materialize(const TailExtendedGraph& teg, std::size_t length) {
  check_tails(teg);
  const Graph& g = teg.core;
  std::vector<std::string> vertices = g.vertex_ids();
  std::vector<EdgeSpec> edges = g.edge_specs();
  for (const Tail& t : teg.tails) {
    const std::string& base = g.vertex_id(t.base);
    for (std::size_t i = 1; i <= length; ++i) {
      vertices.push_back(tail_vertex_id(base, i));
      edges.push_back({tail_edge_id(base, i), tail_vertex_id(base, i), i == 1 ? base : tail_vertex_id(base, i - 1)});
      if (auto w = t.entry_at(i)) edges.push_back({entry_edge_id(base, i), g.vertex_id(*w), tail_vertex_id(base, i)});
    }
  }
  return Graph(std::move(vertices), edges);
}

/// Contracts every tail onto its base. An entry source occurring in the
/// period becomes an omega edge; otherwise its preperiod count is the
/// multiplicity. Collapsed edges are named "<source>-><base>".
inline MultGraph collapse(const TailExtendedGraph& teg) {
  check_tails(teg);
  const Graph& g = teg.core;
  std::vector<MultEdgeSpec> edges;
  for (const Edge& e : g.edges()) edges.push_back({e.id, g.vertex_id(e.src), g.vertex_id(e.dst), Multiplicity::finite(1)});
  for (const Tail& t : teg.tails) {
    std::map<VertexIndex, Multiplicity> count;
    for (const auto& w : t.preperiod) {
      if (!w) continue;
      auto it = count.find(*w);
      count[*w] = it == count.end() ? Multiplicity::finite(1) : it->second + Multiplicity::finite(1);
    }
    for (VertexIndex w : t.periodic_sources()) count[w] = Multiplicity::omega();
    for (const auto& [w, m] : count) {
      edges.push_back({g.vertex_id(w) + "->" + g.vertex_id(t.base), g.vertex_id(w), g.vertex_id(t.base), m});
    }
  }
  return MultGraph(g.vertex_ids(), edges);
}

/// (source id, range id) -> total multiplicity. Two presentations with equal
/// profiles have isomorphic expansions.
inline std::map<std::pair<std::string, std::string>, Multiplicity> multiplicity_profile(const MultGraph& mg) {
  std::map<std::pair<std::string, std::string>, Multiplicity> out;
  for (const MultEdge& e : mg.edges()) {
    auto key = std::make_pair(mg.vertex_id(e.src), mg.vertex_id(e.dst));
    auto it = out.find(key);
    out[key] = it == out.end() ? e.mult : it->second + e.mult;
  }
  return out;
}

/// Core vertices that are sources of the infinite graph: no core in-edge and
/// no tail.
inline std::vector<VertexIndex> true_sources(const TailExtendedGraph& teg) {
  std::vector<bool> based(teg.core.vertex_count(), false);
  for (const Tail& t : teg.tails) based[t.base] = true;
  std::vector<VertexIndex> out;
  for (VertexIndex v : sources(teg.core)) {
    if (!based[v]) out.push_back(v);
  }
  return out;
}

/// Forward reachability from `from` in the infinite graph, projected to the
/// core (an entry from w into any tail position leads to the base).
inline VertexSet reachable_extended(const TailExtendedGraph& teg, VertexIndex from) {
  const Graph& g = teg.core;
  std::vector<std::vector<VertexIndex>> jumps(g.vertex_count());
  for (const Tail& t : teg.tails) {
    for (const auto* part : {&t.preperiod, &t.period}) {
      for (const auto& w : *part) {
        if (w) jumps[*w].push_back(t.base);
      }
    }
  }
  VertexSet seen(g.vertex_count(), {from});
  std::vector<VertexIndex> stack{from};
  while (!stack.empty()) {
    VertexIndex x = stack.back();
    stack.pop_back();
    auto visit = [&](VertexIndex y) {
      if (!seen.contains(y)) {
        seen.insert(y);
        stack.push_back(y);
      }
    };
    for (EdgeIndex e : g.out_edges(x)) visit(g.dst(e));
    for (VertexIndex y : jumps[x]) visit(y);
  }
  return seen;
}

/// A cycle exists iff the core has one or some base reaches one of its own
/// entry sources.
inline bool has_cycle_extended(const TailExtendedGraph& teg) {
  check_tails(teg);
  return has_cycle(materialize(teg, teg.prefix_length(1)));
}

struct ExtendedDetourVerdict {
  bool holds = true;
  /// Base of the first tail whose backwards path lacks a distinct detour.
  std::optional<VertexIndex> tail_witness;
  /// The tail witness as a finite prefix in `materialized`.
  std::optional<Path> tail_path;
  /// First finite source path without a distinct detour (in `materialized`).
  std::optional<Path> finite_witness;
  Graph materialized;
  std::vector<std::pair<Path, Path>> detours;
};

/// Distinct detours for a tail-extended graph: (b) every tail sees a
/// reachable periodic entry source, so its backwards path has a detour
/// through a later entry; (a) every simple path from a true source has a
/// distinct detour, searched on the prefix of length preperiod + 2 periods.
/// Tail failures are reported first.
inline ExtendedDetourVerdict distinct_detours_extended(const TailExtendedGraph& teg) {
  check_tails(teg);
  ExtendedDetourVerdict out;
  const std::size_t len = teg.tails.empty() ? 0 : teg.prefix_length(2);
  out.materialized = materialize(teg, len);
  const Graph& m = out.materialized;

  for (const Tail& t : teg.tails) {
    VertexSet reach = reachable_extended(teg, t.base);
    auto periodic = t.periodic_sources();
    bool fed = std::any_of(periodic.begin(), periodic.end(), [&](VertexIndex w) { return reach.contains(w); });
    if (fed) continue;
    const std::string& base = teg.core.vertex_id(t.base);
    std::vector<EdgeIndex> edges;
    for (std::size_t i = 1; i <= len; ++i) edges.push_back(m.edge_by_id(tail_edge_id(base, i)));
    out.tail_witness = t.base;
    out.tail_path = edges.empty() ? Path::trivial(m.vertex(base)) : make_path(m, std::move(edges));
    break;
  }

  std::set<VertexIndex> genuine;
  for (VertexIndex v : true_sources(teg)) genuine.insert(m.vertex(teg.core.vertex_id(v)));
  for (const Path& mu : enumerate_boundary_simple_paths(m)) {
    if (!genuine.count(mu.source)) continue;
    if (auto nu = distinct_detour_for(m, mu)) {
      out.detours.emplace_back(mu, std::move(*nu));
    } else if (!out.finite_witness) {
      out.finite_witness = mu;
    }
  }
  out.holds = !out.tail_witness && !out.finite_witness;
  if (teg.tails.empty()) {
    DetourVerdict plain = distinct_detours(teg.core);
    if (plain.holds != out.holds) throw InternalError("distinct_detours_extended: disagrees with the finite decision");
  }
  return out;
}

/// Condition (K) on the infinite graph, decided on the prefix with three
/// periods: core vertices and tail positions up to preperiod + one period
/// cover every return-path pattern, and deeper positions repeat them.
struct ExtendedKVerdict {
  bool holds = true;
  std::optional<std::string> witness;  // vertex id, possibly a tail vertex
};

inline ExtendedKVerdict condition_k_extended(const TailExtendedGraph& teg) {
  check_tails(teg);
  if (teg.tails.empty()) {
    ConditionKVerdict k = condition_k(teg.core);
    if (k.holds) return {};
    return {false, teg.core.vertex_id(*k.witness)};
  }
  Graph m = materialize(teg, teg.prefix_length(3));
  std::vector<VertexIndex> probe;
  for (VertexIndex v = 0; v < teg.core.vertex_count(); ++v) probe.push_back(m.vertex(teg.core.vertex_id(v)));
  for (const Tail& t : teg.tails) {
    const std::size_t reach = t.preperiod.size() + std::max<std::size_t>(t.period.size(), 1);
    for (std::size_t i = 1; i <= reach; ++i) probe.push_back(m.vertex(tail_vertex_id(teg.core.vertex_id(t.base), i)));
  }
  std::sort(probe.begin(), probe.end());
  for (VertexIndex v : probe) {
    if (return_path_class(m, v) == WalkClass::one) return {false, m.vertex_id(v)};
  }
  return {};
}

/// Finite graph whose hereditary saturated sets correspond to those of the
/// infinite graph: positions 1..preperiod + period are kept, and the rest of
/// each tail is replaced by a vertex "<base>~tau" with a loop (never forced
/// by saturation) fed by every periodic entry source.
inline Graph lattice_model(const TailExtendedGraph& teg) {
  check_tails(teg);
  const Graph& g = teg.core;
  std::vector<std::string> vertices = g.vertex_ids();
  std::vector<EdgeSpec> edges = g.edge_specs();
  for (const Tail& t : teg.tails) {
    const std::string& base = g.vertex_id(t.base);
    const std::size_t len = t.preperiod.size() + std::max<std::size_t>(t.period.size(), 1);
    for (std::size_t i = 1; i <= len; ++i) {
      vertices.push_back(tail_vertex_id(base, i));
      edges.push_back({tail_edge_id(base, i), tail_vertex_id(base, i), i == 1 ? base : tail_vertex_id(base, i - 1)});
      if (auto w = t.entry_at(i)) edges.push_back({entry_edge_id(base, i), g.vertex_id(*w), tail_vertex_id(base, i)});
    }
    const std::string tau = base + "~tau";
    vertices.push_back(tau);
    edges.push_back({tau + "~loop", tau, tau});
    edges.push_back({tau + "~tail", tau, tail_vertex_id(base, len)});
    for (VertexIndex w : t.periodic_sources()) edges.push_back({tau + "~in~" + g.vertex_id(w), g.vertex_id(w), tau});
  }
  return Graph(std::move(vertices), edges);
}

}  // namespace gca
