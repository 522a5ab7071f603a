#pragma once

// Top-level verdicts: simple factors, elementary subquotients by two
// independent routes, pureness and Z-stability with its provenance.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gca/condition_k.hpp"
#include "gca/desingularize.hpp"
#include "gca/detours.hpp"
#include "gca/graph.hpp"
#include "gca/ideal_lattice.hpp"
#include "gca/walks.hpp"

namespace gca {

enum class FactorKind { af, purely_infinite };

inline std::string to_string(FactorKind k) { return k == FactorKind::af ? "AF" : "purelyInfinite"; }

struct FactorClass {
  FactorKind kind = FactorKind::af;
  /// AF: size of the single matrix summand. Purely infinite: 0.
  std::uint64_t dimension = 0;
  /// Purely infinite: first vertex lying on a cycle.
  std::optional<VertexIndex> cycle_vertex;
};

/// A simple graph algebra under (K) is AF exactly when the graph is acyclic.
inline FactorClass classify_simple_factor(const Graph& g) {
  if (!condition_k(g).holds) throw PreconditionError("classify_simple_factor: Condition (K) fails");
  if (enumerate_hs(g).size() != 2) throw PreconditionError("classify_simple_factor: graph algebra is not simple");
  if (!has_cycle(g)) {
    auto summands = acyclic_summands(g);
    if (summands.size() != 1) throw InternalError("classify_simple_factor: simple acyclic graph with several sources");
    return FactorClass{FactorKind::af, summands.begin()->second, std::nullopt};
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (return_path_class(g, v) != WalkClass::zero) return FactorClass{FactorKind::purely_infinite, 0, v};
  }
  throw InternalError("classify_simple_factor: cycle without a return path");
}

enum class ElementaryMethod { combinatorial, oracle };

struct ElementaryVerdict {
  bool present = false;
  /// Vertex with a unique return path (circle-algebra subquotient).
  std::optional<VertexIndex> k_failure;
  /// Combinatorial route: boundary path without a distinct detour, and the
  /// line-graph certificate built from it.
  std::optional<Path> path;
  std::optional<ElementaryWitness> construction;
  /// Oracle route: H' ⊂ H whose subquotient is simple and acyclic.
  std::optional<std::pair<VertexSet, VertexSet>> subquotient;
  std::uint64_t dimension = 0;
};

inline ElementaryVerdict elementary_subquotients(const Graph& g, ElementaryMethod method) {
  ElementaryVerdict out;
  ConditionKVerdict k = condition_k(g);
  if (!k.holds) {
    out.present = true;
    out.k_failure = k.witness;
    return out;
  }
  if (method == ElementaryMethod::combinatorial) {
    DetourVerdict d = distinct_detours(g);
    if (!d.holds) {
      out.present = true;
      out.path = d.witness;
      out.construction = elementary_witness(g, *d.witness);
      out.dimension = out.construction->dimension;
    }
    return out;
  }
  IdealLattice lattice = enumerate_hs(g);
  for (const VertexSet& h : lattice.elements()) {
    for (const VertexSet& lower : lattice.elements()) {
      if (lower == h || !lower.subset_of(h)) continue;
      Graph factor = subquotient_graph(g, h, lower);
      if (has_cycle(factor) || enumerate_hs(factor).size() != 2) continue;
      out.present = true;
      out.subquotient = std::make_pair(h, lower);
      out.dimension = acyclic_summands(factor).begin()->second;
      return out;
    }
  }
  return out;
}

enum class InputKind { graph, mult_graph, tail_extended };

inline std::string to_string(InputKind k) {
  switch (k) {
    case InputKind::graph: return "graph";
    case InputKind::mult_graph: return "multgraph";
    case InputKind::tail_extended: return "tail-extended";
  }
  return "?";
}

enum class ZVerdict { yes, no, conjecturally_yes, conjecturally_no };

inline std::string to_string(ZVerdict z) {
  switch (z) {
    case ZVerdict::yes: return "yes";
    case ZVerdict::no: return "no";
    case ZVerdict::conjecturally_yes: return "conjecturally-yes";
    case ZVerdict::conjecturally_no: return "conjecturally-no";
  }
  return "?";
}

/// Which result justifies a Z-stability verdict.
enum class Provenance {
  finite_no_sources,     // finite graph, (K) and no sources
  acyclic_detours,       // no cycles and distinct detours
  finite_ideal_lattice,  // finitely many ideals and distinct detours
  pureness_necessity,    // not pure, hence not Z-stable
  open_conjecture,       // (K) and distinct detours, sufficiency unproven
};

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::finite_no_sources: return "thm-B";
    case Provenance::acyclic_detours: return "thm-A-acyclic";
    case Provenance::finite_ideal_lattice: return "thm-A-finite-ideals";
    case Provenance::pureness_necessity: return "thm-C-necessity";
    case Provenance::open_conjecture: return "conjecture-4.2";
  }
  return "?";
}

struct SeriesStep {
  std::vector<std::string> members;  // vertex ids of H_i
  std::optional<FactorKind> factor;  // class of H_i / H_{i-1}; unset for H_0
  std::uint64_t dimension = 0;
};

struct RegularityReport {
  InputKind input = InputKind::graph;
  bool condition_k = true;
  std::optional<std::string> condition_k_witness;
  bool distinct_detours = true;
  /// Rendered path, or "tail:<base>" for a tail without a detour.
  std::optional<std::string> distinct_detours_witness;
  bool no_sources = true;
  bool row_finite = true;
  bool acyclic = true;
  std::optional<std::uint64_t> ideal_count;  // unset: infinite or not all gauge-invariant
  bool elementary_subquotient = false;
  std::optional<std::string> elementary_witness;
  bool pure = true;
  ZVerdict z_stable = ZVerdict::yes;
  Provenance provenance = Provenance::finite_no_sources;
  std::optional<std::vector<SeriesStep>> composition_series;
  std::vector<std::string> notes;
};

namespace detail {

inline void decide_z(RegularityReport& r, bool finite) {
  if (!r.pure) {
    r.z_stable = ZVerdict::no;
    r.provenance = Provenance::pureness_necessity;
  } else if (finite && r.condition_k && r.no_sources) {
    r.z_stable = ZVerdict::yes;
    r.provenance = Provenance::finite_no_sources;
  } else if (r.acyclic && r.distinct_detours) {
    r.z_stable = ZVerdict::yes;
    r.provenance = Provenance::acyclic_detours;
  } else if (finite && r.condition_k) {
    r.z_stable = ZVerdict::yes;
    r.provenance = Provenance::finite_ideal_lattice;
  } else {
    r.z_stable = ZVerdict::conjecturally_yes;
    r.provenance = Provenance::open_conjecture;
  }
}

}  // namespace detail

inline RegularityReport regularity_report(const Graph& g) {
  RegularityReport r;
  ConditionKVerdict k = condition_k(g);
  r.condition_k = k.holds;
  if (k.witness) r.condition_k_witness = g.vertex_id(*k.witness);
  DetourVerdict d = distinct_detours(g);
  r.distinct_detours = d.holds;
  if (d.witness) r.distinct_detours_witness = render_path(g, *d.witness);
  r.no_sources = sources(g).empty();
  r.acyclic = !has_cycle(g);
  r.pure = r.condition_k && r.distinct_detours;

  ElementaryVerdict e = elementary_subquotients(g, ElementaryMethod::combinatorial);
  r.elementary_subquotient = e.present;
  if (e.k_failure) {
    r.elementary_witness = "unique return path at " + g.vertex_id(*e.k_failure);
  } else if (e.path) {
    r.elementary_witness = render_path(g, *e.path) + " (matrix summand of size " + std::to_string(e.dimension) + ")";
  }

  if (r.condition_k) {
    IdealLattice lattice = enumerate_hs(g);
    r.ideal_count = lattice.size();
    CompositionChain chain = composition_series(g, lattice);
    std::vector<SeriesStep> steps;
    for (std::size_t i = 0; i < chain.chain.size(); ++i) {
      SeriesStep s;
      s.members = vertex_ids_of(g, chain.chain[i]);
      if (i > 0) {
        FactorClass fc = classify_simple_factor(subquotient_graph(g, chain.chain[i], chain.chain[i - 1]));
        s.factor = fc.kind;
        s.dimension = fc.dimension;
      }
      steps.push_back(std::move(s));
    }
    r.composition_series = std::move(steps);
  } else {
    r.notes.push_back("a vertex with a single return path yields non-gauge-invariant ideals");
  }
  detail::decide_z(r, true);
  return r;
}

inline RegularityReport regularity_report(const TailExtendedGraph& teg) {
  check_tails(teg);
  if (teg.tails.empty()) {
    RegularityReport r = regularity_report(teg.core);
    r.input = InputKind::tail_extended;
    return r;
  }
  RegularityReport r;
  r.input = InputKind::tail_extended;
  ExtendedKVerdict k = condition_k_extended(teg);
  r.condition_k = k.holds;
  r.condition_k_witness = k.witness;
  ExtendedDetourVerdict d = distinct_detours_extended(teg);
  r.distinct_detours = d.holds;
  if (d.tail_witness) {
    r.distinct_detours_witness = "tail:" + teg.core.vertex_id(*d.tail_witness);
  } else if (d.finite_witness) {
    r.distinct_detours_witness = render_path(d.materialized, *d.finite_witness);
  }
  r.no_sources = true_sources(teg).empty();
  r.acyclic = !has_cycle_extended(teg);
  r.pure = r.condition_k && r.distinct_detours;
  r.elementary_subquotient = !r.pure;
  if (!r.condition_k) {
    r.elementary_witness = "unique return path at " + *k.witness;
  } else if (!r.distinct_detours) {
    r.elementary_witness = *r.distinct_detours_witness;
  }
  if (r.condition_k) {
    r.ideal_count = enumerate_hs(lattice_model(teg)).size();
  } else {
    r.notes.push_back("a vertex with a single return path yields non-gauge-invariant ideals");
  }
  r.notes.push_back("verdicts computed on the desingularization; the original algebra is a full corner of its algebra");
  detail::decide_z(r, false);
  return r;
}

/// MultGraph inputs without omega edges are expanded; otherwise they are
/// desingularized first.
inline RegularityReport regularity_report(const MultGraph& mg) {
  RegularityReport r;
  if (!mg.has_omega()) {
    r = regularity_report(mg.expand());
  } else {
    r = regularity_report(desingularize(mg));
    r.row_finite = false;
    const Graph& shape = mg.shape();
    if (shape.vertex_count() == 1 && shape.edge_count() == 1 && mg.edges().front().mult.is_omega()) {
      r.notes.push_back("one vertex with infinitely many loops: the algebra is O_infinity");
    }
  }
  r.input = InputKind::mult_graph;
  return r;
}

/// Empty when the report satisfies its internal invariants, else the first
/// violated one.
inline std::optional<std::string> check_report_coherence(const RegularityReport& r) {
  if (r.pure != (r.condition_k && r.distinct_detours)) return "pure differs from (K) and distinct detours";
  if (r.elementary_subquotient != !r.pure) return "elementary subquotient differs from not pure";
  if (r.z_stable == ZVerdict::yes && !r.pure) return "Z-stable verdict without pureness";
  if (r.z_stable == ZVerdict::no && r.provenance != Provenance::pureness_necessity) {
    return "negative verdict without the pureness justification";
  }
  if (r.provenance == Provenance::pureness_necessity && r.z_stable != ZVerdict::no) return "necessity tag on a positive verdict";
  if (r.condition_k != r.ideal_count.has_value()) return "ideal count present exactly when (K) holds";
  if (r.composition_series && !r.condition_k) return "composition series without (K)";
  if (!r.condition_k_witness != r.condition_k) return "Condition (K) witness mismatch";
  if (!r.distinct_detours_witness != r.distinct_detours) return "distinct detours witness mismatch";
  return std::nullopt;
}

}  // namespace gca
