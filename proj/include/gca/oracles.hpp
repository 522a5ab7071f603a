#pragma once

// Brute-force reference implementations. They work straight from the
// definitions (explicit walk and path enumeration, subset scans) and share no
// decision logic with the production algorithms they are compared against.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "gca/graph.hpp"
#include "gca/vertex_set.hpp"
#include "gca/walks.hpp"

namespace gca::oracle {

/// Up to `cap` distinct walks described by `q` of length at most `bound`.
/// Prefixes are extended only when some completion within the remaining
/// length exists, so the search never wanders.
inline std::vector<std::vector<EdgeIndex>> walks(const Graph& g, const WalkQuery& q, std::size_t bound,
                                                 std::size_t cap = 2) {
  const std::size_t n = g.vertex_count();
  const bool flagged = q.must_leave.has_value();
  auto forbidden = [&](VertexIndex v) { return q.forbidden_interior.universe() == n && q.forbidden_interior.contains(v); };
  auto leaves = [&](EdgeIndex e) { return flagged && !(*q.must_leave)[e]; };

  // can[r][2x+f]: from x with flag f, some completion of length <= r exists.
  std::vector<std::vector<bool>> can(bound + 1, std::vector<bool>(2 * n, false));
  for (std::size_t r = 1; r <= bound; ++r) {
    for (VertexIndex x = 0; x < n; ++x) {
      for (int f = 0; f < 2; ++f) {
        bool ok = false;
        for (EdgeIndex e : g.out_edges(x)) {
          VertexIndex y = g.dst(e);
          bool nf = f || leaves(e);
          if (y == q.end && (!flagged || nf)) ok = true;
          if (!forbidden(y) && can[r - 1][2 * y + (nf ? 1 : 0)]) ok = true;
          if (ok) break;
        }
        can[r][2 * x + f] = ok;
      }
    }
  }

  std::vector<std::vector<EdgeIndex>> found;
  if (q.allow_trivial && !flagged && q.start == q.end) found.emplace_back();
  std::vector<EdgeIndex> trail;
  auto dfs = [&](auto&& self, VertexIndex x, bool f, std::size_t remaining) -> void {
    for (EdgeIndex e : g.out_edges(x)) {
      if (found.size() >= cap) return;
      VertexIndex y = g.dst(e);
      bool nf = f || leaves(e);
      trail.push_back(e);
      if (y == q.end && (!flagged || nf)) found.emplace_back(trail.rbegin(), trail.rend());
      if (found.size() < cap && remaining > 1 && !forbidden(y) && can[remaining - 1][2 * y + (nf ? 1 : 0)]) {
        self(self, y, nf, remaining - 1);
      }
      trail.pop_back();
    }
  };
  if (bound > 0 && found.size() < cap) dfs(dfs, q.start, false, bound);
  return found;
}

inline std::size_t walk_bound(const Graph& g) { return g.vertex_count() * g.vertex_count() + g.vertex_count(); }

/// Hereditary by reachability: anything with a path into the set is in it.
inline bool hereditary(const Graph& g, const VertexSet& s) {
  for (VertexIndex v : s.members()) {
    for (VertexIndex w = 0; w < g.vertex_count(); ++w) {
      if (!s.contains(w) && reachable_from(g, w).contains(v)) return false;
    }
  }
  return true;
}

inline bool saturated(const Graph& g, const VertexSet& s) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (s.contains(v)) continue;
    bool receives = false;
    bool all_inside = true;
    for (const Edge& e : g.edges()) {
      if (e.dst != v) continue;
      receives = true;
      if (!s.contains(e.src)) all_inside = false;
    }
    if (receives && all_inside) return false;
  }
  return true;
}

/// Intersection of every hereditary saturated superset of `s`.
inline VertexSet closure(const Graph& g, const VertexSet& s) {
  const std::size_t n = g.vertex_count();
  if (n >= 25) throw PreconditionError("oracle::closure: graph too large for a subset scan");
  VertexSet out = VertexSet::all(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet t = VertexSet::from_mask(n, mask);
    if (s.subset_of(t) && hereditary(g, t) && saturated(g, t)) out = out & t;
  }
  return out;
}

/// Every hereditary saturated set, by subset scan.
inline std::vector<VertexSet> hs_sets(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n >= 25) throw PreconditionError("oracle::hs_sets: graph too large for a subset scan");
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet t = VertexSet::from_mask(n, mask);
    if (hereditary(g, t) && saturated(g, t)) out.push_back(t);
  }
  return out;
}

/// Paths counted per source vertex by explicit enumeration (acyclic graphs).
inline std::map<VertexIndex, std::uint64_t> path_counts_by_source(const Graph& g) {
  std::map<VertexIndex, std::uint64_t> out;
  for (VertexIndex w = 0; w < g.vertex_count(); ++w) {
    if (!g.in_edges(w).empty()) continue;
    std::uint64_t count = 0;
    std::vector<VertexIndex> stack{w};
    while (!stack.empty()) {
      VertexIndex x = stack.back();
      stack.pop_back();
      ++count;
      for (EdgeIndex e : g.out_edges(x)) stack.push_back(g.dst(e));
    }
    out.emplace(w, count);
  }
  return out;
}

/// Some distinct detour of `mu` among all paths of length <= `bound`.
inline std::optional<Path> detour(const Graph& g, const Path& mu, std::size_t bound) {
  std::vector<bool> on(g.vertex_count(), false);
  for (VertexIndex v : path_vertices(g, mu)) on[v] = true;
  std::vector<bool> in_mu(g.edge_count(), false);
  for (EdgeIndex e : mu.edges) in_mu[e] = true;
  std::optional<Path> hit;
  std::vector<EdgeIndex> trail;  // source end first
  auto dfs = [&](auto&& self, VertexIndex start, VertexIndex x, bool off) -> void {
    if (hit) return;
    if (off && on[x]) {
      hit = Path{{trail.rbegin(), trail.rend()}, start, x};
      return;
    }
    if (trail.size() == bound) return;
    for (EdgeIndex e : g.out_edges(x)) {
      trail.push_back(e);
      self(self, start, g.dst(e), off || !in_mu[e]);
      trail.pop_back();
    }
  };
  for (VertexIndex v = 0; v < g.vertex_count() && !hit; ++v) {
    if (on[v]) dfs(dfs, v, v, false);
  }
  return hit;
}

}  // namespace gca::oracle
