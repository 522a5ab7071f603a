#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace gca;
using namespace fixtures;

namespace {

VertexSet ids(const Graph& g, std::vector<std::string> names) { return vertex_set_of(g, names); }

}  // namespace

TEST(ClassifySubset, SingleEdge) {
  Graph g = single_edge();
  EXPECT_EQ(classify_subset(g, ids(g, {"v"})), (HSFlags{false, true}));
  EXPECT_EQ(classify_subset(g, ids(g, {"u"})), (HSFlags{true, false}));
  EXPECT_EQ(classify_subset(g, VertexSet(2)), (HSFlags{true, true}));
  EXPECT_EQ(classify_subset(line3(), VertexSet(3)), (HSFlags{true, true}));
}

TEST(ClassifySubset, RejectsForeignUniverse) { EXPECT_THROW(classify_subset(single_edge(), VertexSet(3)), GraphError); }

TEST(Closure, Examples) {
  Graph g = single_edge();
  EXPECT_EQ(hs_closure(g, ids(g, {"v"})).subset, VertexSet::all(2));
  EXPECT_EQ(hs_closure(g, ids(g, {"u"})).subset, VertexSet::all(2));
  Graph l = line3();
  HSSet c = hs_closure(l, ids(l, {"c"}));
  EXPECT_EQ(c.subset, VertexSet::all(3));
  EXPECT_EQ(c.subset, oracle::closure(l, ids(l, {"c"})));
  EXPECT_TRUE(c.hereditary && c.saturated);
}

TEST(Closure, ExtensiveMonotoneIdempotent) {
  Graph g = make({"a", "b", "c", "d"}, {{"x", "a", "b"}, {"y", "b", "c"}, {"z", "d", "d"}, {"w", "d", "c"}});
  const std::size_t n = g.vertex_count();
  for (std::uint64_t m = 0; m < 16; ++m) {
    VertexSet s = VertexSet::from_mask(n, m);
    VertexSet c = hs_closure(g, s).subset;
    EXPECT_TRUE(s.subset_of(c));
    EXPECT_EQ(hs_closure(g, c).subset, c);
    EXPECT_EQ(c, oracle::closure(g, s));
    for (std::uint64_t m2 = 0; m2 < 16; ++m2) {
      VertexSet t = VertexSet::from_mask(n, m2);
      if (s.subset_of(t)) EXPECT_TRUE(c.subset_of(hs_closure(g, t).subset));
    }
  }
}

TEST(Lattice, Examples) {
  EXPECT_EQ(enumerate_hs(two_loops()).size(), 2u);
  IdealLattice e = enumerate_hs(single_edge());
  ASSERT_EQ(e.size(), 2u);
  EXPECT_TRUE(e[0].empty());
  EXPECT_EQ(e[1], VertexSet::all(2));
  // Saturation pushes everything downstream of a chosen vertex in.
  IdealLattice l = enumerate_hs(line3());
  EXPECT_EQ(l.elements(), IdealLattice(oracle::hs_sets(line3())).elements());
  EXPECT_EQ(l.size(), 2u);
}

TEST(Lattice, JoinFallbackMatchesScan) {
  Graph g = make({"a", "b", "c", "d", "e"},
                 {{"1", "a", "a"}, {"2", "a", "b"}, {"3", "c", "c"}, {"4", "c", "b"}, {"5", "d", "e"}, {"6", "e", "e"}});
  EXPECT_EQ(enumerate_hs(g, 0).elements(), enumerate_hs(g).elements());
  EXPECT_EQ(enumerate_hs(g).elements(), IdealLattice(oracle::hs_sets(g)).elements());
}

TEST(Subquotient, IdentityCases) {
  Graph g = single_edge();
  Graph s = subquotient_graph(g, VertexSet::all(2), VertexSet(2));
  EXPECT_EQ(s.vertex_ids(), g.vertex_ids());
  EXPECT_EQ(s.edge_count(), 1u);
  Graph c = subquotient_graph(two_cycle(), VertexSet::all(2), VertexSet(2));
  EXPECT_EQ(c.edge_count(), 2u);
}

TEST(Subquotient, QuotientByClosure) {
  Graph g = make({"a", "b", "c"}, {{"x", "a", "a"}, {"y", "a", "b"}, {"z", "c", "b"}, {"w", "c", "c"}});
  VertexSet h = hs_closure(g, ids(g, {"a"})).subset;
  EXPECT_EQ(h, ids(g, {"a"}));
  Graph q = subquotient_graph(g, VertexSet::all(3), h);
  EXPECT_EQ(q.vertex_ids(), (std::vector<std::string>{"b", "c"}));
  EXPECT_EQ(q.edge_count(), 2u);  // z and w; x and y start in H
  EXPECT_THROW(subquotient_graph(g, h, VertexSet::all(3)), PreconditionError);
  EXPECT_THROW(subquotient_graph(g, VertexSet::all(3), ids(g, {"b"})), PreconditionError);
}

TEST(Series, Examples) {
  EXPECT_EQ(composition_series(two_loops()).chain, (std::vector<VertexSet>{VertexSet(1), VertexSet::all(1)}));
  EXPECT_THROW(composition_series(two_cycle()), PreconditionError);
  EXPECT_THROW(composition_series(one_loop()), PreconditionError);
}

TEST(Series, FactorsAreSimple) {
  Graph g = make({"a", "b", "c"}, {{"1", "a", "a"}, {"2", "a", "a"}, {"3", "a", "b"}, {"4", "c", "b"}});
  CompositionChain ch = composition_series(g);
  ASSERT_GE(ch.chain.size(), 3u);
  for (std::size_t i = 1; i < ch.chain.size(); ++i) {
    EXPECT_EQ(enumerate_hs(subquotient_graph(g, ch.chain[i], ch.chain[i - 1])).size(), 2u);
  }
}
