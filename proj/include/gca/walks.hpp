#pragma once

// Reachability, diagnostics, boundary paths and the walk-count trichotomy.

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "gca/graph.hpp"
#include "gca/vertex_set.hpp"

namespace gca {

inline std::vector<VertexIndex> sources(const Graph& g) {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_source(v)) out.push_back(v);
  }
  return out;
}

inline std::vector<VertexIndex> sinks(const Graph& g) {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) out.push_back(v);
  }
  return out;
}

/// Vertices in topological order (every edge goes from an earlier to a later
/// vertex), or nullopt when the graph has a directed cycle.
inline std::optional<std::vector<VertexIndex>> topological_order(const Graph& g) {
  std::vector<std::size_t> indeg(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) ++indeg[e.dst];
  std::vector<VertexIndex> order;
  std::vector<VertexIndex> ready;
  for (VertexIndex v = g.vertex_count(); v-- > 0;) {
    if (indeg[v] == 0) ready.push_back(v);
  }
  while (!ready.empty()) {
    VertexIndex v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (EdgeIndex e : g.out_edges(v)) {
      if (--indeg[g.dst(e)] == 0) ready.push_back(g.dst(e));
    }
  }
  if (order.size() != g.vertex_count()) return std::nullopt;
  return order;
}

inline bool has_cycle(const Graph& g) { return !topological_order(g).has_value(); }

/// Vertices reachable from `from` along directed edges (including `from`).
inline VertexSet reachable_from(const Graph& g, VertexIndex from) {
  VertexSet seen(g.vertex_count());
  std::vector<VertexIndex> stack{from};
  seen.insert(from);
  while (!stack.empty()) {
    VertexIndex v = stack.back();
    stack.pop_back();
    for (EdgeIndex e : g.out_edges(v)) {
      if (!seen.contains(g.dst(e))) {
        seen.insert(g.dst(e));
        stack.push_back(g.dst(e));
      }
    }
  }
  return seen;
}

/// Vertices with a path into some member of `targets` (including the targets).
inline VertexSet reaching(const Graph& g, const VertexSet& targets) {
  VertexSet seen = targets;
  std::vector<VertexIndex> stack = targets.members();
  while (!stack.empty()) {
    VertexIndex v = stack.back();
    stack.pop_back();
    for (EdgeIndex e : g.in_edges(v)) {
      if (!seen.contains(g.src(e))) {
        seen.insert(g.src(e));
        stack.push_back(g.src(e));
      }
    }
  }
  return seen;
}

struct Diagnostics {
  bool row_finite = true;
  std::vector<VertexIndex> sources;
  std::vector<VertexIndex> sinks;
  bool has_cycle = false;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
};

inline Diagnostics validate(const Graph& g) {
  Diagnostics d;
  d.row_finite = true;
  d.sources = sources(g);
  d.sinks = sinks(g);
  d.has_cycle = has_cycle(g);
  d.vertex_count = g.vertex_count();
  d.edge_count = g.edge_count();
  return d;
}

/// Diagnostics of a multiplicity graph; `edge_count` counts edge classes.
inline Diagnostics validate(const MultGraph& g) {
  Diagnostics d = validate(g.shape());
  d.row_finite = g.is_row_finite();
  return d;
}

/// All simple paths whose source vertex is a source of g, including the
/// trivial paths at sources, sorted.
inline std::vector<Path> enumerate_boundary_simple_paths(const Graph& g) {
  std::vector<Path> out;
  std::vector<bool> on_path(g.vertex_count(), false);
  // Extends at the range end: a new edge e with s(e) = r(mu) gives e mu.
  auto extend = [&](auto&& self, const Path& mu) -> void {
    out.push_back(mu);
    for (EdgeIndex e : g.out_edges(mu.range)) {
      VertexIndex next = g.dst(e);
      if (on_path[next]) continue;
      Path longer;
      longer.edges.reserve(mu.edges.size() + 1);
      longer.edges.push_back(e);
      longer.edges.insert(longer.edges.end(), mu.edges.begin(), mu.edges.end());
      longer.source = mu.source;
      longer.range = next;
      on_path[next] = true;
      self(self, longer);
      on_path[next] = false;
    }
  };
  for (VertexIndex w : sources(g)) {
    on_path[w] = true;
    extend(extend, Path::trivial(w));
    on_path[w] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Walk-count trichotomy

enum class WalkClass { zero = 0, one = 1, many = 2 };

inline std::string to_string(WalkClass c) {
  switch (c) {
    case WalkClass::zero: return "zero";
    case WalkClass::one: return "one";
    case WalkClass::many: return "many";
  }
  return "?";
}

/// Walks start -> end following edge direction (a walk is a path mu with
/// s(mu) = start and r(mu) = end). Interior vertices must avoid
/// `forbidden_interior`. With `must_leave`, at least one edge outside that
/// set must be used. With `allow_trivial`, the empty walk counts when
/// start == end and `must_leave` is absent.
struct WalkQuery {
  VertexIndex start = 0;
  VertexIndex end = 0;
  VertexSet forbidden_interior;
  std::optional<std::vector<bool>> must_leave;
  bool allow_trivial = false;
};

/// Classifies the number of walks described by `q` as zero, one or many.
///
/// States are (vertex, used-an-edge-outside-must_leave). A virtual start node
/// S and accept node T bracket them; every S -> T route corresponds to exactly
/// one walk. Restricting to nodes both reachable from S and co-reachable to T,
/// the count is zero when T is unreachable, many when the restriction has a
/// cycle or a branching node, and one otherwise.
inline WalkClass walk_class(const Graph& g, const WalkQuery& q) {
  const std::size_t n = g.vertex_count();
  if (q.start >= n || q.end >= n) throw GraphError("walk_class: unknown vertex");
  VertexSet forbidden = q.forbidden_interior.universe() == n ? q.forbidden_interior : VertexSet(n);
  const bool flagged = q.must_leave.has_value();
  if (flagged && q.must_leave->size() != g.edge_count()) {
    throw GraphError("walk_class: must_leave mask has the wrong size");
  }

  // Node numbering: interior state (v, f) -> 2v + f; S -> 2n; T -> 2n + 1.
  const std::size_t S = 2 * n;
  const std::size_t T = 2 * n + 1;
  const std::size_t N = 2 * n + 2;
  std::vector<std::vector<std::size_t>> succ(N);
  std::vector<std::vector<std::size_t>> pred(N);
  auto link = [&](std::size_t a, std::size_t b) {
    succ[a].push_back(b);
    pred[b].push_back(a);
  };
  auto step = [&](std::size_t from_node, VertexIndex x, bool f) {
    for (EdgeIndex e : g.out_edges(x)) {
      VertexIndex y = g.dst(e);
      bool nf = f || (flagged && !(*q.must_leave)[e]);
      if (!forbidden.contains(y)) link(from_node, 2 * y + (nf ? 1 : 0));
      if (y == q.end && (!flagged || nf)) link(from_node, T);
    }
  };
  step(S, q.start, false);
  for (VertexIndex x = 0; x < n; ++x) {
    if (forbidden.contains(x)) continue;
    step(2 * x, x, false);
    if (flagged) step(2 * x + 1, x, true);
  }

  auto sweep = [&](std::size_t from, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> seen(N, false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b : adj[a]) {
        if (!seen[b]) {
          seen[b] = true;
          stack.push_back(b);
        }
      }
    }
    return seen;
  };
  std::vector<bool> fwd = sweep(S, succ);
  std::vector<bool> bwd = sweep(T, pred);
  std::vector<bool> useful(N);
  for (std::size_t a = 0; a < N; ++a) useful[a] = fwd[a] && bwd[a];

  int count = 0;
  if (useful[T]) {
    count = 1;
    // Branching inside the useful part.
    for (std::size_t a = 0; a < N && count < 2; ++a) {
      if (!useful[a]) continue;
      std::size_t out = 0;
      for (std::size_t b : succ[a]) out += useful[b] ? 1 : 0;
      if (out >= 2) count = 2;
    }
    // Cycle inside the useful part (Kahn's algorithm).
    if (count < 2) {
      std::vector<std::size_t> indeg(N, 0);
      std::size_t total = 0;
      for (std::size_t a = 0; a < N; ++a) {
        if (!useful[a]) continue;
        ++total;
        for (std::size_t b : succ[a]) {
          if (useful[b]) ++indeg[b];
        }
      }
      std::vector<std::size_t> ready;
      for (std::size_t a = 0; a < N; ++a) {
        if (useful[a] && indeg[a] == 0) ready.push_back(a);
      }
      std::size_t done = 0;
      while (!ready.empty()) {
        std::size_t a = ready.back();
        ready.pop_back();
        ++done;
        for (std::size_t b : succ[a]) {
          if (useful[b] && --indeg[b] == 0) ready.push_back(b);
        }
      }
      if (done != total) count = 2;
    }
  }
  if (q.allow_trivial && !flagged && q.start == q.end) ++count;
  return count == 0 ? WalkClass::zero : count == 1 ? WalkClass::one : WalkClass::many;
}

// ---------------------------------------------------------------------------
// Acyclic path counts

/// For each source w, the number of paths with source w (the trivial path
/// included). These are the matrix-summand sizes of an acyclic graph algebra.
inline std::map<VertexIndex, std::uint64_t> acyclic_summands(const Graph& g) {
  auto order = topological_order(g);
  if (!order) throw GraphError("acyclic_summands: graph has a cycle");
  // from[x] = number of paths with source x.
  std::vector<std::uint64_t> from(g.vertex_count(), 1);
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    for (EdgeIndex e : g.out_edges(*it)) from[*it] += from[g.dst(e)];
  }
  std::map<VertexIndex, std::uint64_t> out;
  for (VertexIndex w : sources(g)) out.emplace(w, from[w]);
  return out;
}

}  // namespace gca
