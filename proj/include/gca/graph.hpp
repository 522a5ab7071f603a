#pragma once

// Directed multigraphs with explicit source and range maps.
//
// Conventions: an edge e has src = s(e) and dst = r(e). Paths are written
// right to left, so a path mu = mu_1 mu_2 ... mu_n satisfies
// s(mu_i) = r(mu_{i+1}); its range is r(mu_1) and its source is s(mu_n).
// Vertices and edges are stored sorted by id, so index order is id order.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gca {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

/// Malformed graph input: dangling endpoints, duplicate or unknown ids.
class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two independent computations disagreed; always a bug in this library.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Edge as written in an input document: endpoints by vertex id.
struct EdgeSpec {
  std::string id;
  std::string src;
  std::string dst;
};

struct Edge {
  std::string id;
  VertexIndex src;
  VertexIndex dst;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;

  Graph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges) {
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (i > 0 && vertices[i] == vertices[i - 1]) {
        throw GraphError("duplicate vertex id \"" + vertices[i] + "\"");
      }
      index_.emplace(vertices[i], i);
    }
    vertices_ = std::move(vertices);

    std::vector<Edge> built;
    built.reserve(edges.size());
    std::unordered_set<std::string> seen;
    for (const EdgeSpec& spec : edges) {
      if (!seen.insert(spec.id).second) {
        throw GraphError("duplicate edge id \"" + spec.id + "\"");
      }
      auto s = find_vertex(spec.src);
      if (!s) throw GraphError("edge \"" + spec.id + "\": dangling endpoint \"" + spec.src + "\"");
      auto d = find_vertex(spec.dst);
      if (!d) throw GraphError("edge \"" + spec.id + "\": dangling endpoint \"" + spec.dst + "\"");
      built.push_back(Edge{spec.id, *s, *d});
    }
    std::sort(built.begin(), built.end(),
              [](const Edge& a, const Edge& b) { return a.id < b.id; });
    edges_ = std::move(built);

    in_.assign(vertices_.size(), {});
    out_.assign(vertices_.size(), {});
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
      edge_index_.emplace(edges_[e].id, e);
      in_[edges_[e].dst].push_back(e);
      out_[edges_[e].src].push_back(e);
    }
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_id(VertexIndex v) const { return vertices_.at(v); }
  const std::vector<std::string>& vertex_ids() const { return vertices_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  VertexIndex src(EdgeIndex e) const { return edges_[e].src; }
  VertexIndex dst(EdgeIndex e) const { return edges_[e].dst; }

  /// r^{-1}(v), ascending edge index.
  const std::vector<EdgeIndex>& in_edges(VertexIndex v) const { return in_.at(v); }
  /// s^{-1}(v), ascending edge index.
  const std::vector<EdgeIndex>& out_edges(VertexIndex v) const { return out_.at(v); }

  std::optional<VertexIndex> find_vertex(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeIndex> find_edge(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  VertexIndex vertex(const std::string& id) const {
    auto v = find_vertex(id);
    if (!v) throw GraphError("unknown vertex id \"" + id + "\"");
    return *v;
  }
  EdgeIndex edge_by_id(const std::string& id) const {
    auto e = find_edge(id);
    if (!e) throw GraphError("unknown edge id \"" + id + "\"");
    return *e;
  }

  bool is_source(VertexIndex v) const { return in_.at(v).empty(); }
  bool is_sink(VertexIndex v) const { return out_.at(v).empty(); }

  std::vector<EdgeSpec> edge_specs() const {
    std::vector<EdgeSpec> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) out.push_back({e.id, vertices_[e.src], vertices_[e.dst]});
    return out;
  }

  /// Subgraph on the given vertex and edge masks; ids are preserved.
  Graph subgraph(const std::vector<bool>& keep_vertex, const std::vector<bool>& keep_edge) const {
    std::vector<std::string> vs;
    for (VertexIndex v = 0; v < vertices_.size(); ++v) {
      if (keep_vertex[v]) vs.push_back(vertices_[v]);
    }
    std::vector<EdgeSpec> es;
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
      if (!keep_edge[e]) continue;
      if (!keep_vertex[edges_[e].src] || !keep_vertex[edges_[e].dst]) {
        throw GraphError("subgraph edge \"" + edges_[e].id + "\" leaves the vertex set");
      }
      es.push_back({edges_[e].id, vertices_[edges_[e].src], vertices_[edges_[e].dst]});
    }
    return Graph(std::move(vs), es);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::unordered_map<std::string, EdgeIndex> edge_index_;
  std::vector<std::vector<EdgeIndex>> in_;
  std::vector<std::vector<EdgeIndex>> out_;
};

// ---------------------------------------------------------------------------
// Multiplicity-annotated graphs

/// Positive edge multiplicity, or the countably infinite "omega".
class Multiplicity {
 public:
  constexpr Multiplicity() = default;
  static constexpr Multiplicity finite(std::uint64_t n) { return Multiplicity(n, false); }
  static constexpr Multiplicity omega() { return Multiplicity(0, true); }

  constexpr bool is_omega() const { return omega_; }
  constexpr std::uint64_t value() const { return count_; }

  /// Cardinal sum; omega absorbs.
  friend constexpr Multiplicity operator+(Multiplicity a, Multiplicity b) {
    if (a.omega_ || b.omega_) return omega();
    return finite(a.count_ + b.count_);
  }
  friend constexpr bool operator==(const Multiplicity&, const Multiplicity&) = default;

  std::string to_string() const { return omega_ ? "omega" : std::to_string(count_); }

 private:
  constexpr Multiplicity(std::uint64_t n, bool w) : count_(n), omega_(w) {}
  std::uint64_t count_ = 1;
  bool omega_ = false;
};

struct MultEdgeSpec {
  std::string id;
  std::string src;
  std::string dst;
  Multiplicity mult;
};

struct MultEdge {
  std::string id;
  VertexIndex src;
  VertexIndex dst;
  Multiplicity mult;
};

class MultGraph {
 public:
  MultGraph() = default;

  MultGraph(std::vector<std::string> vertices, const std::vector<MultEdgeSpec>& edges) {
    // Reuse Graph's validation of ids and endpoints.
    std::vector<EdgeSpec> plain;
    plain.reserve(edges.size());
    for (const auto& e : edges) {
      if (!e.mult.is_omega() && e.mult.value() == 0) {
        throw GraphError("edge \"" + e.id + "\": multiplicity must be positive");
      }
      plain.push_back({e.id, e.src, e.dst});
    }
    shape_ = Graph(std::move(vertices), plain);
    std::unordered_map<std::string, Multiplicity> mult;
    for (const auto& e : edges) mult.emplace(e.id, e.mult);
    for (const Edge& e : shape_.edges()) edges_.push_back({e.id, e.src, e.dst, mult.at(e.id)});
  }

  explicit MultGraph(const Graph& g) : shape_(g) {
    for (const Edge& e : g.edges()) edges_.push_back({e.id, e.src, e.dst, Multiplicity::finite(1)});
  }

  std::size_t vertex_count() const { return shape_.vertex_count(); }
  const std::vector<std::string>& vertex_ids() const { return shape_.vertex_ids(); }
  const std::string& vertex_id(VertexIndex v) const { return shape_.vertex_id(v); }
  const std::vector<MultEdge>& edges() const { return edges_; }
  /// The underlying graph with one edge per edge class.
  const Graph& shape() const { return shape_; }

  bool has_omega() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const MultEdge& e) { return e.mult.is_omega(); });
  }
  bool is_row_finite() const { return !has_omega(); }

  std::vector<MultEdgeSpec> edge_specs() const {
    std::vector<MultEdgeSpec> out;
    for (const auto& e : edges_) out.push_back({e.id, vertex_id(e.src), vertex_id(e.dst), e.mult});
    return out;
  }

  /// Materializes finite multiplicities as parallel edges "e#1", "e#2", ...
  /// Multiplicity-one edges keep their id. Throws on omega edges.
  Graph expand() const {
    std::vector<EdgeSpec> es;
    for (const auto& e : edges_) {
      if (e.mult.is_omega()) throw GraphError("edge \"" + e.id + "\" has infinite multiplicity");
      if (e.mult.value() == 1) {
        es.push_back({e.id, vertex_id(e.src), vertex_id(e.dst)});
        continue;
      }
      for (std::uint64_t k = 1; k <= e.mult.value(); ++k) {
        es.push_back({e.id + "#" + std::to_string(k), vertex_id(e.src), vertex_id(e.dst)});
      }
    }
    return Graph(shape_.vertex_ids(), es);
  }

 private:
  Graph shape_;
  std::vector<MultEdge> edges_;
};

// ---------------------------------------------------------------------------
// Paths

/// A finite path. `edges[0]` is mu_1 (at the range end); a trivial path has no
/// edges and source == range == its base vertex.
struct Path {
  std::vector<EdgeIndex> edges;
  VertexIndex source = 0;
  VertexIndex range = 0;

  static Path trivial(VertexIndex v) { return Path{{}, v, v}; }

  bool is_trivial() const { return edges.empty(); }
  std::size_t length() const { return edges.size(); }

  // Lexicographic by edge sequence (edge indices follow id order), then base.
  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;
};

inline Path edge_path(const Graph& g, EdgeIndex e) { return Path{{e}, g.src(e), g.dst(e)}; }

/// Builds mu_1 ... mu_n from edge indices, checking s(mu_i) = r(mu_{i+1}).
inline Path make_path(const Graph& g, std::vector<EdgeIndex> edges) {
  if (edges.empty()) throw GraphError("make_path: empty edge list has no base vertex");
  for (EdgeIndex e : edges) {
    if (e >= g.edge_count()) throw GraphError("make_path: edge index out of range");
  }
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (g.src(edges[i]) != g.dst(edges[i + 1])) {
      throw GraphError("not a path: s(" + g.edge(edges[i]).id + ") != r(" + g.edge(edges[i + 1]).id + ")");
    }
  }
  Path p;
  p.range = g.dst(edges.front());
  p.source = g.src(edges.back());
  p.edges = std::move(edges);
  return p;
}

/// Path from edge ids in written order.
inline Path make_path(const Graph& g, const std::vector<std::string>& edge_ids) {
  std::vector<EdgeIndex> es;
  for (const auto& id : edge_ids) es.push_back(g.edge_by_id(id));
  return make_path(g, std::move(es));
}

/// The concatenation mu nu, defined when s(mu) = r(nu).
inline std::optional<Path> concat(const Path& mu, const Path& nu) {
  if (mu.source != nu.range) return std::nullopt;
  Path out;
  out.edges = mu.edges;
  out.edges.insert(out.edges.end(), nu.edges.begin(), nu.edges.end());
  out.range = mu.range;
  out.source = nu.source;
  return out;
}

inline bool is_path_of(const Graph& g, const Path& p) {
  if (p.source >= g.vertex_count() || p.range >= g.vertex_count()) return false;
  if (p.edges.empty()) return p.source == p.range;
  for (EdgeIndex e : p.edges) {
    if (e >= g.edge_count()) return false;
  }
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
    if (g.src(p.edges[i]) != g.dst(p.edges[i + 1])) return false;
  }
  return g.dst(p.edges.front()) == p.range && g.src(p.edges.back()) == p.source;
}

/// Vertices along the path from range to source: r(mu_1), s(mu_1), ..., s(mu_n).
inline std::vector<VertexIndex> path_vertices(const Graph& g, const Path& p) {
  std::vector<VertexIndex> out{p.range};
  for (EdgeIndex e : p.edges) out.push_back(g.src(e));
  return out;
}

inline bool is_simple(const Graph& g, const Path& p) {
  auto vs = path_vertices(g, p);
  std::sort(vs.begin(), vs.end());
  return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
}

/// "e2.e1" for paths with edges, "[v]" for a trivial path.
inline std::string render_path(const Graph& g, const Path& p) {
  if (p.is_trivial()) return "[" + g.vertex_id(p.source) + "]";
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) out += '.';
    out += g.edge(p.edges[i]).id;
  }
  return out;
}

}  // namespace gca
