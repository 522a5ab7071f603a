#pragma once

// JSON graph documents, report serialization and DOT export.
//
// Graph document:
//   {"vertices": [id...],
//    "edges": [{"id": id, "src": id, "dst": id, "mult": n | "omega"}...],
//    "tails": [{"base": id, "preperiod": [id|null...], "period": [id|null...]}...]}
// "mult" defaults to 1; "tails" is optional and turns the document into a
// tail-extended presentation whose core must have finite multiplicities.

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gca/classifier.hpp"
#include "gca/desingularize.hpp"
#include "gca/graph.hpp"
#include "gca/ideal_lattice.hpp"
#include "gca/inflow.hpp"
#include "gca/lpa.hpp"

namespace gca {

using Json = nlohmann::ordered_json;

/// Malformed or invalid input document; the message starts with a location.
class InputError : public GraphError {
 public:
  using GraphError::GraphError;
};

struct ParsedInput {
  InputKind kind = InputKind::graph;
  MultGraph mult;
  std::optional<TailExtendedGraph> tails;
};

namespace detail {

inline const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

inline std::string string_at(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

inline Multiplicity mult_at(const Json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "omega") return Multiplicity::omega();
    throw InputError(where + ": expected a positive integer or \"omega\"");
  }
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > 0) return Multiplicity::finite(j.get<std::uint64_t>());
  throw InputError(where + ": expected a positive integer or \"omega\"");
}

inline std::vector<std::optional<VertexIndex>> entries_at(const Json& j, const Graph& core, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<std::optional<VertexIndex>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string loc = where + "[" + std::to_string(i) + "]";
    if (j[i].is_null()) {
      out.push_back(std::nullopt);
      continue;
    }
    auto v = core.find_vertex(string_at(j[i], loc));
    if (!v) throw InputError(loc + ": unknown vertex \"" + j[i].get<std::string>() + "\"");
    out.push_back(*v);
  }
  return out;
}

}  // namespace detail

inline ParsedInput parse_input_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("document: expected an object");
  const Json& vs = detail::field(doc, "vertices", "document");
  if (!vs.is_array()) throw InputError("vertices: expected an array");
  std::vector<std::string> vertices;
  std::set<std::string> seen_v;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string id = detail::string_at(vs[i], "vertices[" + std::to_string(i) + "]");
    if (!seen_v.insert(id).second) throw InputError("vertices[" + std::to_string(i) + "]: duplicate vertex id \"" + id + "\"");
    vertices.push_back(std::move(id));
  }
  const Json& es = detail::field(doc, "edges", "document");
  if (!es.is_array()) throw InputError("edges: expected an array");
  std::vector<MultEdgeSpec> edges;
  std::set<std::string> seen_e;
  bool plain = true;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!es[i].is_object()) throw InputError(where + ": expected an object");
    MultEdgeSpec e;
    e.id = detail::string_at(detail::field(es[i], "id", where), where + ".id");
    e.src = detail::string_at(detail::field(es[i], "src", where), where + ".src");
    e.dst = detail::string_at(detail::field(es[i], "dst", where), where + ".dst");
    e.mult = es[i].contains("mult") ? detail::mult_at(es[i]["mult"], where + ".mult") : Multiplicity::finite(1);
    if (!seen_e.insert(e.id).second) throw InputError(where + ".id: duplicate edge id \"" + e.id + "\"");
    if (!seen_v.count(e.src)) throw InputError(where + ".src: dangling endpoint \"" + e.src + "\"");
    if (!seen_v.count(e.dst)) throw InputError(where + ".dst: dangling endpoint \"" + e.dst + "\"");
    if (!(e.mult == Multiplicity::finite(1))) plain = false;
    edges.push_back(std::move(e));
  }
  ParsedInput out;
  out.mult = MultGraph(vertices, edges);
  out.kind = plain ? InputKind::graph : InputKind::mult_graph;
  if (!doc.contains("tails")) return out;

  if (out.mult.has_omega()) throw InputError("tails: core edges must have finite multiplicity");
  const Json& ts = doc["tails"];
  if (!ts.is_array()) throw InputError("tails: expected an array");
  TailExtendedGraph teg;
  try {
    teg.core = out.mult.expand();
  } catch (const GraphError& err) {
    throw InputError(std::string("edges: ") + err.what());
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string where = "tails[" + std::to_string(i) + "]";
    if (!ts[i].is_object()) throw InputError(where + ": expected an object");
    Tail t;
    std::string base = detail::string_at(detail::field(ts[i], "base", where), where + ".base");
    auto b = teg.core.find_vertex(base);
    if (!b) throw InputError(where + ".base: unknown vertex \"" + base + "\"");
    t.base = *b;
    t.preperiod = ts[i].contains("preperiod") ? detail::entries_at(ts[i]["preperiod"], teg.core, where + ".preperiod")
                                              : std::vector<std::optional<VertexIndex>>{};
    t.period = detail::entries_at(detail::field(ts[i], "period", where), teg.core, where + ".period");
    teg.tails.push_back(std::move(t));
  }
  if (auto why = tail_problem(teg)) throw InputError("tails: " + *why);
  out.kind = InputKind::tail_extended;
  out.tails = std::move(teg);
  return out;
}

inline ParsedInput parse_input(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw InputError(std::string("document: malformed JSON: ") + err.what());
  }
  return parse_input_json(doc);
}

/// Parses a document without tails.
inline MultGraph parse_graph(const std::string& text) {
  ParsedInput in = parse_input(text);
  if (in.tails) throw InputError("tails: document is tail-extended");
  return in.mult;
}

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const MultGraph& mg) {
  Json doc;
  doc["vertices"] = mg.vertex_ids();
  doc["edges"] = Json::array();
  for (const MultEdge& e : mg.edges()) {
    Json je{{"id", e.id}, {"src", mg.vertex_id(e.src)}, {"dst", mg.vertex_id(e.dst)}};
    if (e.mult.is_omega()) {
      je["mult"] = "omega";
    } else if (e.mult.value() != 1) {
      je["mult"] = e.mult.value();
    }
    doc["edges"].push_back(std::move(je));
  }
  return doc;
}

inline Json to_json(const Graph& g) { return to_json(MultGraph(g)); }

inline Json to_json(const TailExtendedGraph& teg) {
  Json doc = to_json(teg.core);
  doc["tails"] = Json::array();
  auto entries = [&](const std::vector<std::optional<VertexIndex>>& xs) {
    Json arr = Json::array();
    for (const auto& w : xs) arr.push_back(w ? Json(teg.core.vertex_id(*w)) : Json(nullptr));
    return arr;
  };
  for (const Tail& t : teg.tails) {
    doc["tails"].push_back(
        {{"base", teg.core.vertex_id(t.base)}, {"preperiod", entries(t.preperiod)}, {"period", entries(t.period)}});
  }
  return doc;
}

inline Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

inline Json to_json(const RegularityReport& r) {
  Json j;
  j["input"] = to_string(r.input);
  j["conditionK"] = {{"holds", r.condition_k}, {"witness", optional_string(r.condition_k_witness)}};
  j["distinctDetours"] = {{"holds", r.distinct_detours}, {"witness", optional_string(r.distinct_detours_witness)}};
  j["noSources"] = r.no_sources;
  j["rowFinite"] = r.row_finite;
  j["acyclic"] = r.acyclic;
  j["idealCount"] = r.ideal_count ? Json(*r.ideal_count) : Json("infinite/non-gauge-invariant");
  j["elementarySubquotient"] = {{"present", r.elementary_subquotient}, {"witness", optional_string(r.elementary_witness)}};
  j["pure"] = r.pure;
  j["zStable"] = {{"verdict", to_string(r.z_stable)}, {"provenance", to_string(r.provenance)}};
  if (r.composition_series) {
    Json steps = Json::array();
    for (const SeriesStep& s : *r.composition_series) {
      Json js{{"members", s.members}};
      js["factor"] = s.factor ? Json(to_string(*s.factor)) : Json(nullptr);
      js["dimension"] = s.dimension;
      steps.push_back(std::move(js));
    }
    j["compositionSeries"] = std::move(steps);
  } else {
    j["compositionSeries"] = nullptr;
  }
  j["notes"] = r.notes;
  return j;
}

inline std::string to_text(const RegularityReport& r) {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "input:                 " << to_string(r.input) << "\n";
  os << "condition K:           " << yn(r.condition_k);
  if (r.condition_k_witness) os << " (witness " << *r.condition_k_witness << ")";
  os << "\ndistinct detours:      " << yn(r.distinct_detours);
  if (r.distinct_detours_witness) os << " (witness " << *r.distinct_detours_witness << ")";
  os << "\nno sources:            " << yn(r.no_sources) << "\n";
  os << "row-finite:            " << yn(r.row_finite) << "\n";
  os << "acyclic:               " << yn(r.acyclic) << "\n";
  os << "ideal count:           " << (r.ideal_count ? std::to_string(*r.ideal_count) : "infinite/non-gauge-invariant") << "\n";
  os << "elementary subquotient: " << yn(r.elementary_subquotient);
  if (r.elementary_witness) os << " (" << *r.elementary_witness << ")";
  os << "\npure:                  " << yn(r.pure) << "\n";
  os << "Z-stable:              " << to_string(r.z_stable) << " [" << to_string(r.provenance) << "]\n";
  if (r.composition_series) {
    os << "composition series:\n";
    for (const SeriesStep& s : *r.composition_series) {
      os << "  {";
      for (std::size_t i = 0; i < s.members.size(); ++i) os << (i ? "," : "") << s.members[i];
      os << "}";
      if (s.factor) {
        os << "  " << to_string(*s.factor);
        if (*s.factor == FactorKind::af) os << " (M_" << s.dimension << ")";
      }
      os << "\n";
    }
  }
  for (const std::string& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

inline Json to_json(const Graph& g, const Path& p) {
  Json edges = Json::array();
  for (EdgeIndex e : p.edges) edges.push_back(g.edge(e).id);
  return {{"source", g.vertex_id(p.source)}, {"range", g.vertex_id(p.range)}, {"edges", edges}, {"text", render_path(g, p)}};
}

inline Json to_json(const MatrixUnitSystem& sys) {
  const Graph& g = *sys.graph;
  Json j;
  j["root"] = g.vertex_id(sys.root);
  j["graph"] = to_json(g);
  j["blocks"] = Json::array();
  for (const UnitBlock& b : sys.blocks) {
    Json paths = Json::array();
    for (const Path& p : b.paths) paths.push_back(render_path(g, p));
    j["blocks"].push_back({{"target", g.vertex_id(b.target)},
                           {"origin", g.vertex_id(b.origin)},
                           {"size", b.paths.size()},
                           {"paths", paths},
                           {"m2Copies", b.m2_copies},
                           {"m3Copies", b.m3_copies}});
  }
  j["units"] = Json::array();
  for (const MatrixUnit& u : sys.units) {
    const UnitBlock& b = sys.blocks[u.block];
    j["units"].push_back({{"block", u.block},
                          {"mu", render_path(g, b.paths[u.row])},
                          {"nu", render_path(g, b.paths[u.col])},
                          {"element", render(u.element)}});
  }
  j["homImages"] = Json::object();
  for (const auto& [name, img] : sys.hom_images) j["homImages"][name] = render(img);
  std::size_t passed = 0;
  for (const IdentityCheck& c : sys.checks) passed += c.passed ? 1 : 0;
  j["checks"] = {{"total", sys.checks.size()}, {"passed", passed}};
  return j;
}

// ---------------------------------------------------------------------------
// DOT

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_dot(const MultGraph& mg) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (const std::string& v : mg.vertex_ids()) os << "  " << detail::dot_quote(v) << ";\n";
  for (const MultEdge& e : mg.edges()) {
    os << "  " << detail::dot_quote(mg.vertex_id(e.src)) << " -> " << detail::dot_quote(mg.vertex_id(e.dst)) << " [id="
       << detail::dot_quote(e.id);
    if (e.mult.is_omega()) {
      os << ", label=\"ω\", style=bold";
    } else if (e.mult.value() != 1) {
      os << ", label=\"×" << e.mult.value() << "\"";
    }
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const Graph& g) { return to_dot(MultGraph(g)); }

/// Core plus, per tail, the preperiod and one period, ending in an ellipsis.
inline std::string to_dot(const TailExtendedGraph& teg) {
  const Graph& g = teg.core;
  std::ostringstream os;
  os << "digraph G {\n";
  for (const std::string& v : g.vertex_ids()) os << "  " << detail::dot_quote(v) << ";\n";
  for (const Edge& e : g.edges()) {
    os << "  " << detail::dot_quote(g.vertex_id(e.src)) << " -> " << detail::dot_quote(g.vertex_id(e.dst))
       << " [id=" << detail::dot_quote(e.id) << "];\n";
  }
  for (const Tail& t : teg.tails) {
    const std::string& base = g.vertex_id(t.base);
    const std::size_t len = t.preperiod.size() + std::max<std::size_t>(t.period.size(), 1);
    for (std::size_t i = 1; i <= len; ++i) {
      const std::string ti = tail_vertex_id(base, i);
      os << "  " << detail::dot_quote(ti) << " [shape=point];\n";
      os << "  " << detail::dot_quote(ti) << " -> " << detail::dot_quote(i == 1 ? base : tail_vertex_id(base, i - 1))
         << " [id=" << detail::dot_quote(tail_edge_id(base, i)) << "];\n";
      if (auto w = t.entry_at(i)) {
        os << "  " << detail::dot_quote(g.vertex_id(*w)) << " -> " << detail::dot_quote(ti)
           << " [id=" << detail::dot_quote(entry_edge_id(base, i)) << ", style=dashed];\n";
      }
    }
    const std::string dots = base + "~more";
    os << "  " << detail::dot_quote(dots) << " [label=\"…\", shape=plaintext];\n";
    os << "  " << detail::dot_quote(dots) << " -> " << detail::dot_quote(tail_vertex_id(base, len)) << " [style=dotted];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace gca
