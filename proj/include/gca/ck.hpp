#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gca/graph.hpp"
#include "gca/lpa.hpp"

namespace gca {

struct IdentityCheck {
  std::string name;
  bool passed = false;
};

struct CkReport {
  std::vector<IdentityCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

/// Checks the Cuntz-Krieger relations in L(g) symbolically:
/// s_e^* s_e = p_{s(e)}, p_{r(e)} s_e = s_e = s_e p_{s(e)},
/// p_v = sum_{r(e)=v} s_e s_e^* at receiving vertices, p_v p_w = delta p_v, and
/// s_e^* s_f = 0 for e != f.
inline CkReport verify_ck(std::shared_ptr<const Graph> g) {
  CkReport rep;
  const Graph& gr = *g;
  auto record = [&](std::string name, const LpaElement& lhs, const LpaElement& rhs) {
    rep.checks.push_back({std::move(name), lpa_equal(lhs, rhs)});
  };
  auto p = [&](VertexIndex v) { return LpaElement::vertex(g, v); };
  auto s = [&](EdgeIndex e) { return LpaElement::edge(g, e); };
  auto ss = [&](EdgeIndex e) { return LpaElement::edge_star(g, e); };
  const LpaElement zero(g);

  for (EdgeIndex e = 0; e < gr.edge_count(); ++e) {
    const std::string& id = gr.edge(e).id;
    record("s*_[" + id + "]·s_[" + id + "] = p_[" + gr.vertex_id(gr.src(e)) + "]", ss(e) * s(e), p(gr.src(e)));
    record("p_[" + gr.vertex_id(gr.dst(e)) + "]·s_[" + id + "] = s_[" + id + "]", p(gr.dst(e)) * s(e), s(e));
    record("s_[" + id + "]·p_[" + gr.vertex_id(gr.src(e)) + "] = s_[" + id + "]", s(e) * p(gr.src(e)), s(e));
  }
  for (VertexIndex v = 0; v < gr.vertex_count(); ++v) {
    if (gr.in_edges(v).empty()) continue;
    LpaElement sum(g);
    for (EdgeIndex e : gr.in_edges(v)) sum += s(e) * ss(e);
    record("p_[" + gr.vertex_id(v) + "] = sum over r(e)=" + gr.vertex_id(v) + " of s_e·s*_e", p(v), sum);
  }
  for (VertexIndex v = 0; v < gr.vertex_count(); ++v) {
    for (VertexIndex w = 0; w < gr.vertex_count(); ++w) {
      record("p_[" + gr.vertex_id(v) + "]·p_[" + gr.vertex_id(w) + "]", p(v) * p(w), v == w ? p(v) : zero);
    }
  }
  for (EdgeIndex e = 0; e < gr.edge_count(); ++e) {
    for (EdgeIndex f = 0; f < gr.edge_count(); ++f) {
      if (e == f) continue;
      record("s*_[" + gr.edge(e).id + "]·s_[" + gr.edge(f).id + "] = 0", ss(e) * s(f), zero);
    }
  }
  return rep;
}

inline CkReport verify_ck(const Graph& g) { return verify_ck(std::make_shared<const Graph>(g)); }

}  // namespace gca
