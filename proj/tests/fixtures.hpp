#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "gca/gca.hpp"

namespace fixtures {

using gca::Graph;

inline Graph make(std::vector<std::string> vertices,
                  std::vector<std::tuple<std::string, std::string, std::string>> edges) {
  std::vector<gca::EdgeSpec> specs;
  for (auto& [id, src, dst] : edges) specs.push_back({id, src, dst});
  return Graph(std::move(vertices), specs);
}

inline Graph point() { return make({"v"}, {}); }
inline Graph one_loop() { return make({"v"}, {{"e", "v", "v"}}); }
inline Graph two_loops() { return make({"v"}, {{"e", "v", "v"}, {"f", "v", "v"}}); }
inline Graph single_edge() { return make({"u", "v"}, {{"e", "u", "v"}}); }
inline Graph two_cycle() { return make({"a", "b"}, {{"e", "a", "b"}, {"f", "b", "a"}}); }
inline Graph two_cycle_plus_loop() { return make({"a", "b"}, {{"e", "a", "b"}, {"f", "b", "a"}, {"g", "b", "b"}}); }
inline Graph line3() { return make({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}}); }
inline Graph parallel_pair() { return make({"v", "w"}, {{"g1", "w", "v"}, {"g2", "w", "v"}}); }
inline Graph two_into_one() { return make({"u1", "u2", "v"}, {{"a", "u1", "v"}, {"b", "u2", "v"}}); }
inline Graph triple_pair() { return make({"v", "w"}, {{"g1", "w", "v"}, {"g2", "w", "v"}, {"g3", "w", "v"}}); }

inline gca::MultGraph omega_loop() {
  return gca::MultGraph({"v"}, {{"e", "v", "v", gca::Multiplicity::omega()}});
}
inline gca::MultGraph omega_edge() {
  return gca::MultGraph({"u", "v"}, {{"e", "u", "v", gca::Multiplicity::omega()}});
}

inline std::shared_ptr<const Graph> shared(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

/// Same graph with every id prefixed; reverses the sort order of ids when
/// `flip` is set by mapping characters to their complements.
inline Graph relabel(const Graph& g, const std::string& prefix, bool flip) {
  auto name = [&](const std::string& id) {
    std::string out = prefix;
    for (char c : id) out += flip ? static_cast<char>('~' - (c - ' ')) : c;
    return out;
  };
  std::vector<std::string> vs;
  for (const auto& v : g.vertex_ids()) vs.push_back(name(v));
  std::vector<gca::EdgeSpec> es;
  for (const auto& e : g.edges()) es.push_back({name(e.id), name(g.vertex_id(e.src)), name(g.vertex_id(e.dst))});
  return Graph(vs, es);
}

}  // namespace fixtures
