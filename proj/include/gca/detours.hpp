#pragma once

// Distinct detours and the elementary-subquotient witness built from a
// boundary path that has none.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "gca/graph.hpp"
#include "gca/ideal_lattice.hpp"
#include "gca/vertex_set.hpp"
#include "gca/walks.hpp"

namespace gca {

/// True when nu is a path of g with both endpoints on mu and at least one
/// edge not on mu.
inline bool is_distinct_detour(const Graph& g, const Path& mu, const Path& nu) {
  if (!is_path_of(g, nu)) return false;
  auto on = path_vertices(g, mu);
  auto on_mu = [&](VertexIndex v) { return std::find(on.begin(), on.end(), v) != on.end(); };
  if (!on_mu(nu.source) || !on_mu(nu.range)) return false;
  return std::any_of(nu.edges.begin(), nu.edges.end(), [&](EdgeIndex e) {
    return std::find(mu.edges.begin(), mu.edges.end(), e) == mu.edges.end();
  });
}

/// Shortest distinct detour for mu (lexicographically least edge sequence
/// among the shortest), or nullopt when none exists.
///
/// The search builds nu from its range end backwards over states
/// (vertex, used-an-edge-off-mu). A state is accepting when its vertex lies
/// on mu and the flag is set; distances to acceptance are computed first, then
/// the least edge that keeps the remaining distance optimal is taken at every
/// step.
inline std::optional<Path> distinct_detour_for(const Graph& g, const Path& mu) {
  if (!is_path_of(g, mu)) throw PreconditionError("distinct_detour_for: argument is not a path of the graph");
  const std::size_t n = g.vertex_count();
  std::vector<bool> on_mu(n, false);
  for (VertexIndex v : path_vertices(g, mu)) on_mu[v] = true;
  std::vector<bool> mu_edge(g.edge_count(), false);
  for (EdgeIndex e : mu.edges) mu_edge[e] = true;

  auto state = [](VertexIndex v, bool f) { return 2 * v + (f ? 1 : 0); };
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  // Reverse adjacency of the backward-construction transitions.
  std::vector<std::vector<std::size_t>> rev(2 * n);
  for (VertexIndex x = 0; x < n; ++x) {
    for (int f = 0; f < 2; ++f) {
      for (EdgeIndex e : g.in_edges(x)) {
        bool nf = f || !mu_edge[e];
        rev[state(g.src(e), nf)].push_back(state(x, f));
      }
    }
  }
  std::vector<std::size_t> dist(2 * n, kInf);
  std::vector<std::size_t> queue;
  for (VertexIndex v = 0; v < n; ++v) {
    if (on_mu[v]) {
      dist[state(v, true)] = 0;
      queue.push_back(state(v, true));
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t s = queue[head];
    for (std::size_t p : rev[s]) {
      if (dist[p] == kInf) {
        dist[p] = dist[s] + 1;
        queue.push_back(p);
      }
    }
  }

  std::size_t best = kInf;
  for (VertexIndex r = 0; r < n; ++r) {
    if (on_mu[r] && dist[state(r, false)] < best) best = dist[state(r, false)];
  }
  if (best == kInf) return std::nullopt;

  std::vector<EdgeIndex> nu;
  std::size_t remaining = best;
  bool flag = false;
  std::optional<VertexIndex> at;  // current source end; unset before the first edge
  while (remaining > 0) {
    std::optional<EdgeIndex> pick;
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      if (at ? g.dst(e) != *at : !on_mu[g.dst(e)]) continue;
      bool nf = flag || !mu_edge[e];
      if (dist[state(g.src(e), nf)] == remaining - 1) {
        pick = e;
        break;
      }
    }
    if (!pick) throw InternalError("distinct_detour_for: greedy reconstruction lost the optimal route");
    nu.push_back(*pick);
    flag = flag || !mu_edge[*pick];
    at = g.src(*pick);
    --remaining;
  }
  return make_path(g, std::move(nu));
}

struct DetourVerdict {
  bool holds = true;
  /// First boundary simple path (in path order) without a distinct detour.
  std::optional<Path> witness;
  /// Each checked path that has a distinct detour, with the detour found.
  std::vector<std::pair<Path, Path>> detours;
};

/// Checks every simple path of the boundary set (finite paths starting at a
/// source). On a finite graph the answer must coincide with "no sources";
/// both are computed and a mismatch raises InternalError.
inline DetourVerdict distinct_detours(const Graph& g) {
  DetourVerdict out;
  for (const Path& mu : enumerate_boundary_simple_paths(g)) {
    if (auto nu = distinct_detour_for(g, mu)) {
      out.detours.emplace_back(mu, std::move(*nu));
    } else if (!out.witness) {
      out.witness = mu;
    }
  }
  out.holds = !out.witness.has_value();
  if (out.holds != sources(g).empty()) {
    throw InternalError("distinct_detours: path search disagrees with the source check");
  }
  return out;
}

/// Certificate that a boundary path without distinct detours yields an
/// elementary subquotient: the edges of mu form an entrance-complete line
/// graph inside E \ H whose algebra is a single matrix algebra.
struct ElementaryWitness {
  Path path;
  VertexSet reaching;  // vertices off mu with a path to mu
  HSSet closure;       // hs_closure(reaching)
  Graph line_graph;
  std::uint64_t dimension = 0;
};

inline ElementaryWitness elementary_witness(const Graph& g, const Path& mu) {
  if (!is_path_of(g, mu)) throw PreconditionError("elementary_witness: argument is not a path of the graph");
  if (!is_simple(g, mu)) throw PreconditionError("elementary_witness: path is not simple");
  if (!g.is_source(mu.source)) throw PreconditionError("elementary_witness: path does not start at a source");
  if (distinct_detour_for(g, mu)) throw PreconditionError("elementary_witness: path has a distinct detour");

  const std::size_t n = g.vertex_count();
  VertexSet on_mu(n, path_vertices(g, mu));
  ElementaryWitness w;
  w.path = mu;
  w.reaching = reaching(g, on_mu) - on_mu;
  w.closure = hs_closure(g, w.reaching);
  if (w.closure.subset.intersects(on_mu)) {
    throw InternalError("elementary_witness: closure of the reaching set meets the path");
  }

  Graph quotient = quotient_graph(g, w.closure.subset);
  std::vector<bool> keep_v(quotient.vertex_count(), false);
  std::vector<bool> keep_e(quotient.edge_count(), false);
  std::vector<bool> mu_edge_q(quotient.edge_count(), false);
  for (VertexIndex v : on_mu.members()) keep_v[quotient.vertex(g.vertex_id(v))] = true;
  for (EdgeIndex e : mu.edges) {
    EdgeIndex qe = quotient.edge_by_id(g.edge(e).id);
    keep_e[qe] = true;
    mu_edge_q[qe] = true;
  }
  // Entrance-completeness: every quotient edge entering the line is a line edge.
  for (EdgeIndex e = 0; e < quotient.edge_count(); ++e) {
    if (keep_v[quotient.dst(e)] && !mu_edge_q[e]) {
      throw InternalError("elementary_witness: line graph is not entrance-complete in the quotient");
    }
  }
  w.line_graph = quotient.subgraph(keep_v, keep_e);
  auto summands = acyclic_summands(w.line_graph);
  if (summands.size() != 1 || summands.begin()->second != mu.length() + 1) {
    throw InternalError("elementary_witness: line graph is not a single matrix summand of size |mu|+1");
  }
  w.dimension = summands.begin()->second;
  return w;
}

}  // namespace gca
