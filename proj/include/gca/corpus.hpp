#pragma once

// Exhaustive small-graph corpus and the cross-checks run over it.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gca/ck.hpp"
#include "gca/classifier.hpp"
#include "gca/condition_k.hpp"
#include "gca/desingularize.hpp"
#include "gca/detours.hpp"
#include "gca/ideal_lattice.hpp"
#include "gca/inflow.hpp"
#include "gca/io.hpp"
#include "gca/lpa.hpp"
#include "gca/lpa_matrix.hpp"
#include "gca/oracles.hpp"
#include "gca/sampling.hpp"
#include "gca/walks.hpp"

namespace gca {

struct CorpusSpec {
  std::size_t max_vertices = 3;
  std::size_t max_edges = 4;  // with allow_omega: bound on edge classes
  bool allow_omega = false;
  bool canonicalize = false;
  std::uint64_t seed = 1;
  std::size_t jobs = 0;  // 0: one per hardware thread
};

inline void check_spec(const CorpusSpec& spec) {
  if (spec.max_vertices == 0) throw PreconditionError("corpus: bounds must be positive (max_vertices = 0)");
}

using BigCount = boost::multiprecision::cpp_int;

inline BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigCount r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Labeled multigraphs with 1..n vertices and at most m edges: a multiset of
/// j <= m ordered pairs out of k^2, summed over j, is C(k^2 + m, m).
/// With omega: at most m distinct pairs, each of multiplicity 1, 2 or omega.
inline BigCount corpus_size(const CorpusSpec& spec) {
  BigCount total = 0;
  for (std::uint64_t k = 1; k <= spec.max_vertices; ++k) {
    if (!spec.allow_omega) {
      total += binomial(k * k + spec.max_edges, spec.max_edges);
      continue;
    }
    BigCount three = 1;
    for (std::uint64_t c = 0; c <= std::min<std::uint64_t>(spec.max_edges, k * k); ++c) {
      total += binomial(k * k, c) * three;
      three *= 3;
    }
  }
  return total;
}

namespace detail {

inline std::vector<std::string> corpus_vertices(std::size_t k) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < k; ++i) v.push_back("v" + std::to_string(i));
  return v;
}

// Canonical key: least sorted (src, dst, mult-code) list over all vertex
// permutations.
inline std::vector<std::tuple<std::size_t, std::size_t, int>> canonical_key(
    std::size_t k, const std::vector<std::tuple<std::size_t, std::size_t, int>>& edges) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::tuple<std::size_t, std::size_t, int>> best;
  bool first = true;
  do {
    std::vector<std::tuple<std::size_t, std::size_t, int>> img;
    for (const auto& [a, b, m] : edges) img.emplace_back(perm[a], perm[b], m);
    std::sort(img.begin(), img.end());
    if (first || img < best) {
      best = std::move(img);
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace detail

/// All labeled multigraphs within the bounds (vertices "v0".., edges
/// "e0".. in pair order), optionally one per isomorphism class.
inline std::vector<Graph> enumerate_corpus(const CorpusSpec& spec) {
  check_spec(spec);
  std::vector<Graph> out;
  std::set<std::pair<std::size_t, std::vector<std::tuple<std::size_t, std::size_t, int>>>> seen;
  for (std::size_t k = 1; k <= spec.max_vertices; ++k) {
    const auto vertices = detail::corpus_vertices(k);
    const std::size_t pairs = k * k;
    std::vector<std::size_t> pick;  // non-decreasing pair indices
    auto emit = [&]() {
      std::vector<std::tuple<std::size_t, std::size_t, int>> raw;
      for (std::size_t p : pick) raw.emplace_back(p / k, p % k, 1);
      if (spec.canonicalize && !seen.emplace(k, detail::canonical_key(k, raw)).second) return;
      std::vector<EdgeSpec> edges;
      for (std::size_t i = 0; i < pick.size(); ++i) {
        edges.push_back({"e" + std::to_string(i), vertices[pick[i] / k], vertices[pick[i] % k]});
      }
      out.emplace_back(vertices, edges);
    };
    auto rec = [&](auto&& self, std::size_t from) -> void {
      emit();
      if (pick.size() == spec.max_edges) return;
      for (std::size_t p = from; p < pairs; ++p) {
        pick.push_back(p);
        self(self, p);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }
  return out;
}

/// Multigraphs with at most `max_edges` distinct edge classes, each of
/// multiplicity 1, 2 or omega.
inline std::vector<MultGraph> enumerate_mult_corpus(const CorpusSpec& spec) {
  check_spec(spec);
  static const Multiplicity kMults[] = {Multiplicity::finite(1), Multiplicity::finite(2), Multiplicity::omega()};
  std::vector<MultGraph> out;
  std::set<std::pair<std::size_t, std::vector<std::tuple<std::size_t, std::size_t, int>>>> seen;
  for (std::size_t k = 1; k <= spec.max_vertices; ++k) {
    const auto vertices = detail::corpus_vertices(k);
    const std::size_t pairs = k * k;
    std::vector<std::pair<std::size_t, int>> pick;  // strictly increasing pairs with a mult code
    auto emit = [&]() {
      std::vector<std::tuple<std::size_t, std::size_t, int>> raw;
      for (const auto& [p, m] : pick) raw.emplace_back(p / k, p % k, m);
      if (spec.canonicalize && !seen.emplace(k, detail::canonical_key(k, raw)).second) return;
      std::vector<MultEdgeSpec> edges;
      for (std::size_t i = 0; i < pick.size(); ++i) {
        const auto& [p, m] = pick[i];
        edges.push_back({"e" + std::to_string(i), vertices[p / k], vertices[p % k], kMults[m]});
      }
      out.emplace_back(vertices, edges);
    };
    auto rec = [&](auto&& self, std::size_t from) -> void {
      emit();
      if (pick.size() == spec.max_edges) return;
      for (std::size_t p = from; p < pairs; ++p) {
        for (int m = 0; m < 3; ++m) {
          pick.emplace_back(p, m);
          self(self, p + 1);
          pick.pop_back();
        }
      }
    };
    rec(rec, 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cross-checks

inline const std::vector<std::string>& corpus_check_names() {
  static const std::vector<std::string> names = {
      "elementary-methods", "zstable-criterion", "detour-collapse", "detour-heredity", "ck-identities",
      "lpa-oracle",         "inflow-unit-sum",   "centralizer",     "closure-oracle",  "walk-trichotomy",
      "composition-series", "report-coherence",  "pure-heredity",   "desingularization"};
  return names;
}

struct CheckOutcome {
  std::size_t check = 0;
  bool passed = true;
  std::string message;
};

namespace detail {

struct CheckSink {
  std::vector<CheckOutcome>& out;
  void record(std::size_t check, bool passed, std::string message = {}) {
    out.push_back({check, passed, passed ? std::string() : std::move(message)});
  }
  // Runs `body`; an exception counts as a failure of `check`.
  template <class F>
  void guard(std::size_t check, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(check, false, std::string("exception: ") + e.what());
    }
  }
};

enum CheckId : std::size_t {
  kElementary,
  kZCriterion,
  kDetourCollapse,
  kDetourHeredity,
  kCk,
  kLpaOracle,
  kUnitSum,
  kCentralizer,
  kClosure,
  kWalks,
  kSeries,
  kCoherence,
  kPureHeredity,
  kDesing,
};

inline bool pure_of(const Graph& g) { return condition_k(g).holds && distinct_detours(g).holds; }

inline void check_walks(const Graph& g, CheckSink& sink) {
  const std::size_t n = g.vertex_count();
  const std::size_t bound = oracle::walk_bound(g);
  std::vector<std::optional<std::vector<bool>>> leaves{std::nullopt};
  if (g.edge_count() > 0) {
    std::vector<bool> even(g.edge_count());
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) even[e] = e % 2 == 0;
    leaves.push_back(even);
  }
  for (VertexIndex s = 0; s < n; ++s) {
    for (VertexIndex t = 0; t < n; ++t) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (const auto& ml : leaves) {
          for (bool trivial : {false, true}) {
            WalkQuery q{s, t, VertexSet::from_mask(n, mask), ml, trivial};
            WalkClass c = walk_class(g, q);
            auto found = oracle::walks(g, q, bound, 2);
            bool ok = c == WalkClass::many ? found.size() >= 2 : found.size() == static_cast<std::size_t>(c);
            if (!ok) {
              sink.record(kWalks, false,
                          "walk_class " + to_string(c) + " vs " + std::to_string(found.size()) + " enumerated walks from " +
                              g.vertex_id(s) + " to " + g.vertex_id(t));
              return;
            }
          }
        }
      }
    }
  }
  sink.record(kWalks, true);
}

inline void check_lpa_oracle(const Graph& g, sampling::Rng& rng, CheckSink& sink) {
  auto gp = std::make_shared<const Graph>(g);
  for (int trial = 0; trial < 6; ++trial) {
    LpaElement a = sampling::random_element(gp, rng, 3, 3);
    LpaElement b(gp);
    switch (trial % 3) {
      case 0: b = sampling::random_element(gp, rng, 3, 3); break;
      case 1:
        b = a + sampling::random_element(gp, rng, 2, 2) * sampling::random_relation(gp, rng) *
                    sampling::random_element(gp, rng, 2, 2);
        break;
      default: b = a + sampling::random_element(gp, rng, 1, 2); break;
    }
    bool symbolic = lpa_equal(a, b);
    bool matrix = represent_acyclic(g, a) == represent_acyclic(g, b);
    bool sound = represent_acyclic(g, normal_form(a)) == represent_acyclic(g, a);
    bool idem = normal_form(normal_form(a)) == normal_form(a);
    if (symbolic != matrix || !sound || !idem) {
      sink.record(kLpaOracle, false, "a = " + render(a) + ", b = " + render(b));
      return;
    }
  }
  sink.record(kLpaOracle, true);
}

inline void check_inflow(const Graph& g, CheckSink& sink) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    for (const InFlowGraph& f : enumerate_inflow(g, v, 4)) {
      UnitSumCheck u = unit_sum(g, f);
      if (!u.in_subgraph || !u.in_ambient) {
        sink.record(kUnitSum, false, "unit sum fails at root " + g.vertex_id(v));
        return;
      }
    }
  }
  sink.record(kUnitSum, true);
}

inline void check_centralizer(const Graph& g, CheckSink& sink) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    InFlowGraph f0 = root_only(g, v);
    for (const InFlowGraph& inner : {f0, grow_inflow(g, f0)}) {
      auto result = find_nondegenerate_extension(g, inner, 8);
      if (auto* outer = std::get_if<InFlowGraph>(&result)) {
        m2m3_hom(g, inner, *outer);  // throws on any failed identity
      } else {
        const auto& fail = std::get<ExtensionFailure>(result);
        bool certified = fail.reason == ExtensionStop::fixpoint && is_path_of(g, fail.witness) && g.is_source(fail.witness.source);
        if (!certified) {
          sink.record(kCentralizer, false, "growth failed without a source-rooted witness at root " + g.vertex_id(v));
          return;
        }
      }
    }
  }
  sink.record(kCentralizer, true);
}

inline void check_series(const Graph& g, const IdealLattice& lattice, CheckSink& sink) {
  CompositionChain chain = composition_series(g, lattice);
  for (std::size_t i = 1; i < chain.chain.size(); ++i) {
    if (!lattice.strictly_between(chain.chain[i - 1], chain.chain[i]).empty()) {
      sink.record(kSeries, false, "chain step " + std::to_string(i) + " is not maximal");
      return;
    }
    Graph factor = subquotient_graph(g, chain.chain[i], chain.chain[i - 1]);
    FactorClass fc = classify_simple_factor(factor);
    if ((fc.kind == FactorKind::af) != !has_cycle(factor)) {
      sink.record(kSeries, false, "factor " + std::to_string(i) + " misclassified");
      return;
    }
  }
  sink.record(kSeries, true);
}

}  // namespace detail

/// Every applicable cross-check on one graph.
inline std::vector<CheckOutcome> run_graph_checks(const Graph& g, std::uint64_t seed) {
  using namespace detail;
  std::vector<CheckOutcome> out;
  CheckSink sink{out};
  const bool acyclic = !has_cycle(g);
  const bool k_holds = condition_k(g).holds;
  const bool no_sources = sources(g).empty();

  sink.guard(kElementary, [&] {
    auto comb = elementary_subquotients(g, ElementaryMethod::combinatorial);
    auto orac = elementary_subquotients(g, ElementaryMethod::oracle);
    sink.record(kElementary, comb.present == orac.present, "combinatorial and oracle routes disagree");
  });
  RegularityReport report;
  sink.guard(kZCriterion, [&] {
    report = regularity_report(g);
    sink.record(kZCriterion, (report.z_stable == ZVerdict::yes) == (k_holds && no_sources), "Z-stable verdict mismatch");
  });
  sink.guard(kCoherence, [&] {
    auto why = check_report_coherence(report);
    sink.record(kCoherence, !why, why.value_or(""));
  });
  sink.guard(kDetourCollapse, [&] {
    DetourVerdict d = distinct_detours(g);  // throws on disagreement with the source check
    bool ok = d.holds == no_sources;
    for (const auto& [mu, nu] : d.detours) ok = ok && is_distinct_detour(g, mu, nu);
    for (const Path& mu : enumerate_boundary_simple_paths(g)) {
      bool general = distinct_detour_for(g, mu).has_value();
      bool brute = oracle::detour(g, mu, 2 * g.vertex_count()).has_value();
      ok = ok && general == brute;
    }
    sink.record(kDetourCollapse, ok, "detour decision mismatch");
  });
  IdealLattice lattice;
  sink.guard(kClosure, [&] {
    lattice = enumerate_hs(g);
    bool ok = lattice.elements() == IdealLattice(oracle::hs_sets(g)).elements();
    const std::size_t n = g.vertex_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n) && ok; ++mask) {
      VertexSet s = VertexSet::from_mask(n, mask);
      ok = hs_closure(g, s).subset == oracle::closure(g, s);
    }
    sink.record(kClosure, ok, "closure differs from the brute-force intersection");
  });
  sink.guard(kDetourHeredity, [&] {
    const bool dd = distinct_detours(g).holds;
    const bool pure = pure_of(g);
    bool ok_dd = true, ok_pure = true;
    for (const VertexSet& h : lattice.elements()) {
      Graph ideal = restriction_graph(g, h);
      Graph quot = quotient_graph(g, h);
      ok_dd = ok_dd && dd == (distinct_detours(ideal).holds && distinct_detours(quot).holds);
      ok_pure = ok_pure && pure == (pure_of(ideal) && pure_of(quot));
    }
    sink.record(kDetourHeredity, ok_dd, "distinct detours not inherited");
    sink.record(kPureHeredity, ok_pure, "pureness not inherited");
  });
  sink.guard(kCk, [&] {
    CkReport ck = verify_ck(g);
    sink.record(kCk, ck.all_passed(), "a Cuntz-Krieger identity failed");
  });
  sink.guard(kWalks, [&] { check_walks(g, sink); });
  if (k_holds) sink.guard(kSeries, [&] { check_series(g, lattice, sink); });
  if (acyclic) {
    sampling::Rng rng(seed);
    sink.guard(kLpaOracle, [&] { check_lpa_oracle(g, rng, sink); });
    sink.guard(kUnitSum, [&] { check_inflow(g, sink); });
    sink.guard(kCentralizer, [&] { check_centralizer(g, sink); });
  }
  return out;
}

/// Round trip, the acyclic tail obstruction, and agreement with the finite
/// decision when nothing is desingularized.
inline std::vector<CheckOutcome> run_mult_checks(const MultGraph& mg) {
  using namespace detail;
  std::vector<CheckOutcome> out;
  CheckSink sink{out};
  sink.guard(kDesing, [&] {
    TailExtendedGraph teg = desingularize(mg);
    bool ok = multiplicity_profile(collapse(teg)) == multiplicity_profile(mg);
    std::string why = "round trip changed the multiplicities";
    ExtendedDetourVerdict d = distinct_detours_extended(teg);
    if (ok && mg.has_omega() && !has_cycle(mg.shape())) {
      ok = !d.holds && d.tail_witness.has_value();
      why = "acyclic omega graph without a tail obstruction";
    }
    if (ok && !mg.has_omega()) {
      ok = d.holds == distinct_detours(teg.core).holds;
      why = "tail-free decision differs from the finite one";
    }
    sink.record(kDesing, ok, why);
  });
  sink.guard(kCoherence, [&] {
    auto why = check_report_coherence(regularity_report(mg));
    sink.record(kCoherence, !why, why.value_or(""));
  });
  return out;
}

struct CheckTally {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::optional<std::string> counterexample;  // graph JSON of the first failure
  std::string message;
};

struct CorpusResult {
  std::size_t graphs = 0;
  BigCount expected_graphs = 0;
  std::vector<CheckTally> tallies;
  bool all_passed() const {
    return std::all_of(tallies.begin(), tallies.end(), [](const CheckTally& t) { return t.failed == 0; });
  }
};

namespace detail {

// Applies `work(i)` to every index with `jobs` threads; results are indexed,
// so the merge order is independent of scheduling.
template <class Work>
void parallel_for(std::size_t count, std::size_t jobs, Work work) {
  if (jobs == 0) jobs = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) work(i);
  };
  if (jobs == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

inline void merge(CorpusResult& res, const std::vector<std::vector<CheckOutcome>>& per_graph,
                  const std::function<std::string(std::size_t)>& describe) {
  for (std::size_t i = 0; i < per_graph.size(); ++i) {
    for (const CheckOutcome& o : per_graph[i]) {
      CheckTally& t = res.tallies[o.check];
      ++t.checked;
      if (o.passed) continue;
      if (t.failed++ == 0) {
        t.counterexample = describe(i);
        t.message = o.message;
      }
    }
  }
}

}  // namespace detail

inline constexpr std::size_t kCorpusGuard = 200000;

inline CorpusResult run_corpus(const CorpusSpec& spec) {
  check_spec(spec);
  CorpusResult res;
  res.expected_graphs = corpus_size(spec);
  if (res.expected_graphs > kCorpusGuard) {
    throw PreconditionError("corpus: " + res.expected_graphs.str() + " graphs exceed the guard of " +
                            std::to_string(kCorpusGuard));
  }
  for (const std::string& name : corpus_check_names()) res.tallies.push_back({name, 0, 0, std::nullopt, {}});
  if (!spec.allow_omega) {
    std::vector<Graph> graphs = enumerate_corpus(spec);
    res.graphs = graphs.size();
    std::vector<std::vector<CheckOutcome>> per(graphs.size());
    detail::parallel_for(graphs.size(), spec.jobs, [&](std::size_t i) { per[i] = run_graph_checks(graphs[i], spec.seed + i); });
    detail::merge(res, per, [&](std::size_t i) { return to_json(graphs[i]).dump(); });
  } else {
    std::vector<MultGraph> graphs = enumerate_mult_corpus(spec);
    res.graphs = graphs.size();
    std::vector<std::vector<CheckOutcome>> per(graphs.size());
    detail::parallel_for(graphs.size(), spec.jobs, [&](std::size_t i) { per[i] = run_mult_checks(graphs[i]); });
    detail::merge(res, per, [&](std::size_t i) { return to_json(graphs[i]).dump(); });
  }
  return res;
}

}  // namespace gca
