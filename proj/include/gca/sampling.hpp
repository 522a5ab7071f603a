#pragma once

// Random graphs and algebra elements for property tests.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gca/graph.hpp"
#include "gca/lpa.hpp"

namespace gca::sampling {

using Rng = std::mt19937_64;

/// Acyclic multigraph on vertices "x0".."x{n-1}" with `m` edges, each going
/// from a higher to a lower index.
inline Graph random_acyclic_graph(Rng& rng, std::size_t n, std::size_t m) {
  if (n < 2 && m > 0) throw PreconditionError("random_acyclic_graph: edges need two vertices");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("x" + std::to_string(i));
  std::vector<EdgeSpec> edges;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t a = pick(rng), b = pick(rng);
    while (a == b) b = pick(rng);
    if (a < b) std::swap(a, b);
    edges.push_back({"f" + std::to_string(k), vertices[a], vertices[b]});
  }
  return Graph(vertices, edges);
}

/// Random path with source `w` of length at most `max_len`.
inline Path random_path_from(const Graph& g, Rng& rng, VertexIndex w, std::size_t max_len) {
  Path p = Path::trivial(w);
  std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < len; ++i) {
    const auto& outs = g.out_edges(p.range);
    if (outs.empty()) break;
    EdgeIndex e = outs[std::uniform_int_distribution<std::size_t>(0, outs.size() - 1)(rng)];
    p.edges.insert(p.edges.begin(), e);
    p.range = g.dst(e);
  }
  return p;
}

inline Rational random_coefficient(Rng& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  int a = 0;
  while (a == 0) a = num(rng);
  return Rational(a, den(rng));
}

/// Sum of up to `max_terms` random monomials s_mu s_nu^*.
inline LpaElement random_element(const std::shared_ptr<const Graph>& g, Rng& rng, std::size_t max_terms,
                                 std::size_t max_len) {
  LpaElement out(g);
  if (g->vertex_count() == 0) return out;
  std::size_t terms = std::uniform_int_distribution<std::size_t>(1, max_terms)(rng);
  std::uniform_int_distribution<std::size_t> vpick(0, g->vertex_count() - 1);
  for (std::size_t i = 0; i < terms; ++i) {
    VertexIndex w = vpick(rng);
    Path mu = random_path_from(*g, rng, w, max_len);
    Path nu = random_path_from(*g, rng, w, max_len);
    out += LpaElement::monomial(g, mu, nu, random_coefficient(rng));
  }
  return out;
}

/// p_v - sum over r(e)=v of s_e s_e^* for a random receiving vertex: zero in
/// L(E) but not syntactically. The other defining relations already hold
/// termwise under the multiplication rule.
inline LpaElement random_relation(const std::shared_ptr<const Graph>& g, Rng& rng) {
  const Graph& gr = *g;
  std::vector<VertexIndex> receivers;
  for (VertexIndex v = 0; v < gr.vertex_count(); ++v) {
    if (!gr.in_edges(v).empty()) receivers.push_back(v);
  }
  if (receivers.empty()) return LpaElement(g);
  VertexIndex v = receivers[std::uniform_int_distribution<std::size_t>(0, receivers.size() - 1)(rng)];
  LpaElement r = LpaElement::vertex(g, v);
  for (EdgeIndex e : gr.in_edges(v)) r -= LpaElement::edge(g, e) * LpaElement::edge_star(g, e);
  return r;
}

}  // namespace gca::sampling
