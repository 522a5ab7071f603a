#pragma once

// In-flow subgraphs rooted at a vertex: finite acyclic, entrance-complete
// subgraphs in which every vertex flows to the root. Strict in-trees are the
// special case with exactly one path from each vertex to the root.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gca/ck.hpp"
#include "gca/graph.hpp"
#include "gca/lpa.hpp"
#include "gca/vertex_set.hpp"
#include "gca/walks.hpp"

namespace gca {

struct InFlowGraph {
  VertexIndex root = 0;
  VertexSet vertices;
  std::vector<bool> edges;
  bool strict_tree = true;

  bool has_edge(EdgeIndex e) const { return edges.at(e); }

  /// Vertices with no incoming edge inside the subgraph.
  std::vector<VertexIndex> sources(const Graph& g) const {
    std::vector<VertexIndex> out;
    for (VertexIndex v : vertices.members()) {
      bool fed = std::any_of(g.in_edges(v).begin(), g.in_edges(v).end(), [&](EdgeIndex e) { return edges[e]; });
      if (!fed) out.push_back(v);
    }
    return out;
  }

  /// The subgraph as a standalone graph; ids are preserved.
  Graph as_graph(const Graph& g) const { return g.subgraph(vertices.mask(), edges); }

  std::size_t edge_count() const { return static_cast<std::size_t>(std::count(edges.begin(), edges.end(), true)); }

  friend bool operator==(const InFlowGraph&, const InFlowGraph&) = default;
};

namespace detail {

// Depth-first enumeration of paths from `at` to `to` over edges accepted by
// `edge_ok`; every vertex except `to` must satisfy `vertex_ok`. Only
// terminates on acyclic edge sets.
template <class EdgeOk, class VertexOk>
void collect_paths(const Graph& g, VertexIndex at, VertexIndex to, const EdgeOk& edge_ok, const VertexOk& vertex_ok,
                   std::vector<EdgeIndex>& trail, VertexIndex origin, std::vector<Path>& out) {
  if (at == to) {
    Path p{{trail.rbegin(), trail.rend()}, origin, to};
    out.push_back(std::move(p));
    return;
  }
  if (!vertex_ok(at)) return;
  for (EdgeIndex e : g.out_edges(at)) {
    if (!edge_ok(e)) continue;
    trail.push_back(e);
    collect_paths(g, g.dst(e), to, edge_ok, vertex_ok, trail, origin, out);
    trail.pop_back();
  }
}

template <class EdgeOk, class VertexOk>
std::vector<Path> paths_between(const Graph& g, VertexIndex from, VertexIndex to, const EdgeOk& edge_ok,
                                const VertexOk& vertex_ok) {
  std::vector<Path> out;
  std::vector<EdgeIndex> trail;
  collect_paths(g, from, to, edge_ok, vertex_ok, trail, from, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t capped_add(std::uint64_t a, std::uint64_t b) { return std::min<std::uint64_t>(a + b, 2); }

// Exactly one path to the root from every vertex of f.
inline bool compute_strict_tree(const Graph& g, const InFlowGraph& f) {
  auto order = topological_order(g);
  if (!order) return false;
  std::vector<std::uint64_t> count(g.vertex_count(), 0);
  count[f.root] = 1;
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    VertexIndex x = *it;
    if (!f.vertices.contains(x) || x == f.root) continue;
    for (EdgeIndex e : g.out_edges(x)) {
      if (f.edges[e]) count[x] = capped_add(count[x], count[g.dst(e)]);
    }
  }
  for (VertexIndex x : f.vertices.members()) {
    if (count[x] != 1) return false;
  }
  return true;
}

}  // namespace detail

/// The single-vertex in-flow graph at `v`.
inline InFlowGraph root_only(const Graph& g, VertexIndex v) {
  if (v >= g.vertex_count()) throw GraphError("root_only: vertex out of range");
  return InFlowGraph{v, VertexSet(g.vertex_count(), {v}), std::vector<bool>(g.edge_count(), false), true};
}

/// First violated structural requirement, or nullopt if `f` is a valid
/// entrance-complete in-flow graph of `g`.
inline std::optional<std::string> inflow_problem(const Graph& g, const InFlowGraph& f) {
  if (f.vertices.universe() != g.vertex_count() || f.edges.size() != g.edge_count()) {
    return "in-flow graph does not belong to this graph";
  }
  if (!f.vertices.contains(f.root)) return "root is not a vertex of the subgraph";
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!f.edges[e]) continue;
    if (!f.vertices.contains(g.src(e)) || !f.vertices.contains(g.dst(e))) {
      return "edge \"" + g.edge(e).id + "\" has an endpoint outside the subgraph";
    }
    if (g.src(e) == f.root) return "root has an outgoing edge \"" + g.edge(e).id + "\"";
    for (EdgeIndex other : g.in_edges(g.dst(e))) {
      if (!f.edges[other]) return "not entrance-complete at edge \"" + g.edge(other).id + "\"";
    }
  }
  Graph sub = f.as_graph(g);
  if (has_cycle(sub)) return "subgraph has a cycle";
  VertexSet to_root = reaching(sub, VertexSet(sub.vertex_count(), {sub.vertex(g.vertex_id(f.root))}));
  if (to_root.size() != sub.vertex_count()) return "some vertex has no path to the root";
  if (f.strict_tree != detail::compute_strict_tree(g, f)) return "strict_tree flag is stale";
  return std::nullopt;
}

inline void check_inflow(const Graph& g, const InFlowGraph& f) {
  if (auto why = inflow_problem(g, f)) throw PreconditionError("invalid in-flow graph: " + *why);
}

/// One growth step: add every edge entering the vertex set and its source.
inline InFlowGraph grow_inflow(const Graph& g, const InFlowGraph& f) {
  if (has_cycle(g)) throw PreconditionError("grow_inflow: ambient graph has a cycle");
  check_inflow(g, f);
  InFlowGraph out = f;
  for (VertexIndex x : f.vertices.members()) {
    for (EdgeIndex e : g.in_edges(x)) {
      out.edges[e] = true;
      out.vertices.insert(g.src(e));
    }
  }
  out.strict_tree = detail::compute_strict_tree(g, out);
  return out;
}

/// Number of grow_inflow steps needed to reach `f` from its root, i.e. the
/// longest path length inside `f`.
inline std::size_t inflow_depth(const Graph& g, const InFlowGraph& f) {
  auto order = topological_order(g);
  if (!order) throw PreconditionError("inflow_depth: ambient graph has a cycle");
  std::vector<std::size_t> depth(g.vertex_count(), 0);
  std::size_t best = 0;
  for (VertexIndex x : *order) {
    for (EdgeIndex e : g.out_edges(x)) {
      if (f.edges[e]) depth[g.dst(e)] = std::max(depth[g.dst(e)], depth[x] + 1);
    }
  }
  for (VertexIndex x : f.vertices.members()) best = std::max(best, depth[x]);
  return best;
}

namespace detail {

inline Path localize(const Graph& local, const Graph& g, const Path& p) {
  std::vector<EdgeIndex> edges;
  edges.reserve(p.edges.size());
  for (EdgeIndex e : p.edges) edges.push_back(local.edge_by_id(g.edge(e).id));
  VertexIndex base = local.vertex(g.vertex_id(p.source));
  if (edges.empty()) return Path::trivial(base);
  return make_path(local, std::move(edges));
}

}  // namespace detail

/// Every entrance-complete in-flow graph rooted at `v` of depth at most
/// `max_depth`. Such a graph is fixed by its set X of non-source vertices:
/// the edges are all edges into X, so X must contain the root (unless empty)
/// and every other member of X must feed some edge into X.
inline std::vector<InFlowGraph> enumerate_inflow(const Graph& g, VertexIndex v, std::size_t max_depth) {
  if (has_cycle(g)) throw PreconditionError("enumerate_inflow: ambient graph has a cycle");
  const std::size_t n = g.vertex_count();
  if (n > 24) throw PreconditionError("enumerate_inflow: graph too large for a subset scan");
  std::vector<InFlowGraph> out;
  out.push_back(root_only(g, v));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet x = VertexSet::from_mask(n, mask);
    if (!x.contains(v)) continue;
    InFlowGraph f = root_only(g, v);
    for (VertexIndex y : x.members()) {
      for (EdgeIndex e : g.in_edges(y)) {
        f.edges[e] = true;
        f.vertices.insert(g.src(e));
      }
    }
    bool fed = true;
    for (VertexIndex y : x.members()) {
      if (g.in_edges(y).empty()) fed = false;  // same graph as without y
      if (y == v) continue;
      bool feeds = std::any_of(g.out_edges(y).begin(), g.out_edges(y).end(), [&](EdgeIndex e) { return x.contains(g.dst(e)); });
      if (!feeds) fed = false;
    }
    if (!fed) continue;
    f.strict_tree = detail::compute_strict_tree(g, f);
    if (inflow_problem(g, f)) continue;
    if (inflow_depth(g, f) <= max_depth) out.push_back(std::move(f));
  }
  return out;
}

/// Paths inside `f` from its sources to the root.
inline std::vector<Path> root_paths(const Graph& g, const InFlowGraph& f) {
  std::vector<Path> out;
  for (VertexIndex u : f.sources(g)) {
    auto ps = detail::paths_between(g, u, f.root, [&](EdgeIndex e) { return f.edges[e]; }, [](VertexIndex) { return true; });
    out.insert(out.end(), ps.begin(), ps.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct UnitSumCheck {
  bool in_subgraph = false;  // in L(F)
  bool in_ambient = false;   // in L(E)
};

/// p_root = sum over root paths lambda of s_lambda s_lambda^*.
inline UnitSumCheck unit_sum(const Graph& g, const InFlowGraph& f) {
  check_inflow(g, f);
  auto ambient = std::make_shared<const Graph>(g);
  auto local = std::make_shared<const Graph>(f.as_graph(g));
  LpaElement in_e(ambient), in_f(local);
  for (const Path& lam : root_paths(g, f)) {
    in_e += LpaElement::monomial(ambient, lam, lam);
    Path l = detail::localize(*local, g, lam);
    in_f += LpaElement::monomial(local, l, l);
  }
  UnitSumCheck out;
  out.in_ambient = lpa_equal(in_e, LpaElement::vertex(ambient, f.root));
  out.in_subgraph = lpa_equal(in_f, LpaElement::vertex(local, local->vertex(g.vertex_id(f.root))));
  return out;
}

struct NondegeneracyEntry {
  VertexIndex target = 0;  // source of the inner graph
  VertexIndex origin = 0;  // source of the outer graph
  std::vector<Path> paths;  // paths origin -> target meeting the inner graph only at target
  std::uint64_t count() const { return paths.size(); }
};

struct NondegeneracyTable {
  std::vector<NondegeneracyEntry> entries;  // every (target, origin) pair, targets major
  bool verdict = true;
};

namespace detail {

inline void check_nested(const Graph& g, const InFlowGraph& inner, const InFlowGraph& outer) {
  check_inflow(g, inner);
  check_inflow(g, outer);
  if (inner.root != outer.root) throw PreconditionError("in-flow graphs have different roots");
  if (!inner.vertices.subset_of(outer.vertices)) throw PreconditionError("inner in-flow graph is not nested");
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (inner.edges[e] && !outer.edges[e]) throw PreconditionError("inner in-flow graph is not nested");
  }
}

}  // namespace detail

/// Counts, for every source u of `inner` and w of `outer`, the paths of
/// `outer` from w to u whose only vertex in `inner` is u. The trivial path
/// counts when u = w. Nondegenerate when no count equals 1.
inline NondegeneracyTable nondegeneracy(const Graph& g, const InFlowGraph& inner, const InFlowGraph& outer) {
  detail::check_nested(g, inner, outer);
  NondegeneracyTable table;
  for (VertexIndex u : inner.sources(g)) {
    for (VertexIndex w : outer.sources(g)) {
      NondegeneracyEntry entry{u, w, {}};
      entry.paths = detail::paths_between(
          g, w, u, [&](EdgeIndex e) { return outer.edges[e]; },
          [&](VertexIndex x) { return !inner.vertices.contains(x); });
      if (entry.count() == 1) table.verdict = false;
      table.entries.push_back(std::move(entry));
    }
  }
  return table;
}

enum class ExtensionStop { fixpoint, step_limit };

struct ExtensionFailure {
  ExtensionStop reason = ExtensionStop::fixpoint;
  std::size_t steps = 0;
  InFlowGraph last;
  /// The unique path of the first degenerate pair of the last table.
  Path witness;
};

/// Grows `f` until the inclusion f ⊂ F_n is nondegenerate.
inline std::variant<InFlowGraph, ExtensionFailure> find_nondegenerate_extension(const Graph& g, const InFlowGraph& f,
                                                                                std::size_t max_steps) {
  if (has_cycle(g)) throw PreconditionError("find_nondegenerate_extension: ambient graph has a cycle");
  InFlowGraph current = f;
  for (std::size_t step = 0;; ++step) {
    NondegeneracyTable table = nondegeneracy(g, f, current);
    if (table.verdict) return current;
    InFlowGraph next = grow_inflow(g, current);
    bool stuck = next == current;
    if (stuck || step == max_steps) {
      ExtensionFailure fail;
      fail.reason = stuck ? ExtensionStop::fixpoint : ExtensionStop::step_limit;
      fail.steps = step;
      fail.last = current;
      for (const auto& entry : table.entries) {
        if (entry.count() == 1) {
          fail.witness = entry.paths.front();
          break;
        }
      }
      return fail;
    }
    current = std::move(next);
  }
}

/// Canonical split N = 2x + 3y: even N uses only 2s, odd N uses a single 3.
inline std::pair<std::uint64_t, std::uint64_t> two_three_split(std::uint64_t n) {
  if (n == 1) throw PreconditionError("two_three_split: 1 is not a sum of 2s and 3s");
  if (n % 2 == 0) return {n / 2, 0};
  return {(n - 3) / 2, 1};
}

/// One block of matrix units: all paths from `origin` to `target` (indices in
/// the standalone outer graph) meeting the inner graph only at `target`.
struct UnitBlock {
  VertexIndex target = 0;
  VertexIndex origin = 0;
  std::vector<Path> paths;
  std::uint64_t m2_copies = 0;
  std::uint64_t m3_copies = 0;
};

struct MatrixUnit {
  std::size_t block = 0;
  std::size_t row = 0;  // index of mu in the block
  std::size_t col = 0;  // index of nu in the block
  LpaElement element;
};

/// Everything here lives over `graph`, the outer in-flow graph as a
/// standalone graph (ids preserved, indices renumbered).
struct MatrixUnitSystem {
  std::shared_ptr<const Graph> graph;
  VertexIndex root = 0;
  std::vector<UnitBlock> blocks;
  std::vector<MatrixUnit> units;
  /// Corner generators s_gamma s_eta^* of the inner algebra, with gamma and
  /// eta running from a common inner source to the root.
  std::vector<LpaElement> corner;
  /// Images of the matrix units of M_2 ("m2:ab") and M_3 ("m3:ab").
  std::map<std::string, LpaElement> hom_images;
  std::vector<IdentityCheck> checks;

  const MatrixUnit& unit(std::size_t block, std::size_t row, std::size_t col) const {
    for (const MatrixUnit& u : units) {
      if (u.block == block && u.row == row && u.col == col) return u;
    }
    throw std::out_of_range("MatrixUnitSystem::unit");
  }
};


namespace detail {

inline void require(MatrixUnitSystem& sys, std::string name, bool passed) {
  sys.checks.push_back({name, passed});
  if (!passed) throw InternalError("matrix unit verification failed: " + name);
}

}  // namespace detail

/// Builds T_mu T_nu^* = sum over inner paths lambda from the block target to
/// the root of s_{lambda mu} s_{lambda nu}^*, and verifies the matrix-unit
/// table, the unit sum p_v and commutation with the inner corner.
inline MatrixUnitSystem matrix_units(const Graph& g, const InFlowGraph& inner, const InFlowGraph& outer) {
  NondegeneracyTable table = nondegeneracy(g, inner, outer);
  if (!table.verdict) throw PreconditionError("matrix_units: inclusion is degenerate");

  MatrixUnitSystem sys;
  auto local = std::make_shared<const Graph>(outer.as_graph(g));
  sys.graph = local;
  sys.root = local->vertex(g.vertex_id(inner.root));

  auto inner_edge = [&](EdgeIndex e) { return inner.edges[e]; };
  auto anywhere = [](VertexIndex) { return true; };
  std::map<VertexIndex, std::vector<Path>> to_root;  // ambient inner source -> local paths to the root
  for (VertexIndex u : inner.sources(g)) {
    for (const Path& lam : detail::paths_between(g, u, inner.root, inner_edge, anywhere)) {
      to_root[u].push_back(detail::localize(*local, g, lam));
    }
  }

  for (const auto& entry : table.entries) {
    if (entry.count() == 0) continue;
    UnitBlock blk;
    blk.target = local->vertex(g.vertex_id(entry.target));
    blk.origin = local->vertex(g.vertex_id(entry.origin));
    for (const Path& p : entry.paths) blk.paths.push_back(detail::localize(*local, g, p));
    const std::vector<Path>& lambdas = to_root[entry.target];
    const std::size_t b = sys.blocks.size();
    for (std::size_t i = 0; i < blk.paths.size(); ++i) {
      for (std::size_t j = 0; j < blk.paths.size(); ++j) {
        LpaElement t(local);
        for (const Path& lam : lambdas) {
          t += LpaElement::monomial(local, *concat(lam, blk.paths[i]), *concat(lam, blk.paths[j]));
        }
        sys.units.push_back({b, i, j, std::move(t)});
      }
    }
    sys.blocks.push_back(std::move(blk));
  }
  for (const auto& [u, lambdas] : to_root) {
    for (const Path& gamma : lambdas) {
      for (const Path& eta : lambdas) sys.corner.push_back(LpaElement::monomial(local, gamma, eta));
    }
  }

  const LpaElement zero(local);
  for (const MatrixUnit& a : sys.units) {
    for (const MatrixUnit& b : sys.units) {
      bool chain = a.block == b.block && a.col == b.row;
      const LpaElement& expect = chain ? sys.unit(a.block, a.row, b.col).element : zero;
      detail::require(sys,
                      "T(" + std::to_string(a.block) + ":" + std::to_string(a.row) + std::to_string(a.col) + ")·T(" +
                          std::to_string(b.block) + ":" + std::to_string(b.row) + std::to_string(b.col) + ")",
                      lpa_equal(a.element * b.element, expect));
    }
  }
  LpaElement diagonal(local);
  for (const MatrixUnit& u : sys.units) {
    if (u.row == u.col) diagonal += u.element;
  }
  detail::require(sys, "sum of diagonal units = p_[" + local->vertex_id(sys.root) + "]",
                  lpa_equal(diagonal, LpaElement::vertex(local, sys.root)));
  for (std::size_t k = 0; k < sys.units.size(); ++k) {
    const MatrixUnit& u = sys.units[k];
    for (std::size_t c = 0; c < sys.corner.size(); ++c) {
      detail::require(sys, "unit " + std::to_string(k) + " commutes with corner generator " + std::to_string(c),
                      lpa_equal(u.element * sys.corner[c], sys.corner[c] * u.element));
    }
  }
  return sys;
}

/// Assembles a unital *-homomorphism M_2 ⊕ M_3 -> p_v L(F') p_v from the
/// matrix units: each block of size N carries x copies of M_2 on consecutive
/// index pairs followed by y copies of M_3 on triples, N = 2x + 3y.
inline MatrixUnitSystem m2m3_hom(const Graph& g, const InFlowGraph& inner, const InFlowGraph& outer) {
  MatrixUnitSystem sys = matrix_units(g, inner, outer);
  const auto& local = sys.graph;

  auto key = [](int dim, std::size_t a, std::size_t b) {
    return "m" + std::to_string(dim) + ":" + std::to_string(a + 1) + std::to_string(b + 1);
  };
  for (int dim : {2, 3}) {
    for (std::size_t a = 0; a < static_cast<std::size_t>(dim); ++a) {
      for (std::size_t b = 0; b < static_cast<std::size_t>(dim); ++b) sys.hom_images.emplace(key(dim, a, b), LpaElement(local));
    }
  }
  for (std::size_t bi = 0; bi < sys.blocks.size(); ++bi) {
    UnitBlock& blk = sys.blocks[bi];
    std::tie(blk.m2_copies, blk.m3_copies) = two_three_split(blk.paths.size());
    std::size_t offset = 0;
    for (std::uint64_t c = 0; c < blk.m2_copies; ++c, offset += 2) {
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) sys.hom_images.at(key(2, a, b)) += sys.unit(bi, offset + a, offset + b).element;
      }
    }
    for (std::uint64_t c = 0; c < blk.m3_copies; ++c, offset += 3) {
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) sys.hom_images.at(key(3, a, b)) += sys.unit(bi, offset + a, offset + b).element;
      }
    }
  }

  struct Gen {
    int dim;
    std::size_t a, b;
  };
  std::vector<Gen> gens;
  for (int dim : {2, 3}) {
    for (std::size_t a = 0; a < static_cast<std::size_t>(dim); ++a) {
      for (std::size_t b = 0; b < static_cast<std::size_t>(dim); ++b) gens.push_back({dim, a, b});
    }
  }
  const LpaElement zero(local);
  auto image = [&](const Gen& x) -> const LpaElement& { return sys.hom_images.at(key(x.dim, x.a, x.b)); };
  for (const Gen& x : gens) {
    for (const Gen& y : gens) {
      bool chain = x.dim == y.dim && x.b == y.a;
      const LpaElement& expect = chain ? sys.hom_images.at(key(x.dim, x.a, y.b)) : zero;
      detail::require(sys, "hom(" + key(x.dim, x.a, x.b) + ")·hom(" + key(y.dim, y.a, y.b) + ")",
                      lpa_equal(image(x) * image(y), expect));
    }
    detail::require(sys, "hom(" + key(x.dim, x.a, x.b) + ")* = hom(" + key(x.dim, x.b, x.a) + ")",
                    lpa_equal(lpa_star(image(x)), sys.hom_images.at(key(x.dim, x.b, x.a))));
    for (std::size_t c = 0; c < sys.corner.size(); ++c) {
      detail::require(sys, "hom(" + key(x.dim, x.a, x.b) + ") commutes with corner generator " + std::to_string(c),
                      lpa_equal(image(x) * sys.corner[c], sys.corner[c] * image(x)));
    }
  }
  LpaElement one(local);
  for (const Gen& x : gens) {
    if (x.a == x.b) one += image(x);
  }
  detail::require(sys, "hom(1) = p_[" + local->vertex_id(sys.root) + "]", lpa_equal(one, LpaElement::vertex(local, sys.root)));
  LpaElement y1 = sys.hom_images.at("m2:11") + sys.hom_images.at("m3:11");
  LpaElement y2 = sys.hom_images.at("m2:22") + sys.hom_images.at("m3:22") + sys.hom_images.at("m3:33");
  detail::require(sys, "hom(y1)·hom(y2) = 0", normal_form(y1 * y2).is_zero());
  return sys;
}

}  // namespace gca
