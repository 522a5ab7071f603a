#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace gca;
using namespace fixtures;

namespace {

LpaElement parse(const std::shared_ptr<const Graph>& g, const std::string& text) { return parse_element(g, text); }

}  // namespace

TEST(LpaMul, RangeProjectionIsIdempotent) {
  auto g = shared(single_edge());
  LpaElement q = parse(g, "s_[e]·s*_[e]");
  EXPECT_EQ(q * q, q);
}

TEST(LpaMul, AdjointTimesEdgeIsSourceProjection) {
  auto g = shared(single_edge());
  EXPECT_EQ(parse(g, "p_[u]·s*_[e]") * parse(g, "s_[e]·p_[u]"), parse(g, "p_[u]"));
  EXPECT_EQ(parse(g, "s*_[e]") * parse(g, "s_[e]"), parse(g, "p_[u]"));
}

TEST(LpaMul, DistinctLoopsAreOrthogonal) {
  auto g = shared(two_loops());
  EXPECT_TRUE((parse(g, "s*_[e]") * parse(g, "s_[f]")).is_zero());
}

TEST(LpaMul, ProjectionsActOnTheCorrectSide) {
  auto g = shared(single_edge());
  LpaElement s = parse(g, "s_[e]");
  EXPECT_EQ(parse(g, "p_[v]") * s, s);
  EXPECT_EQ(s * parse(g, "p_[u]"), s);
  EXPECT_TRUE((parse(g, "p_[u]") * s).is_zero());
  EXPECT_TRUE((parse(g, "p_[u]") * parse(g, "p_[v]")).is_zero());
}

TEST(LpaMul, MixedGraphsRejected) {
  auto g = shared(single_edge());
  auto h = shared(two_into_one());
  EXPECT_THROW(parse(g, "p_[v]") * parse(h, "p_[v]"), LpaError);
  // Structurally equal graphs behind distinct pointers are accepted.
  auto same = shared(single_edge());
  EXPECT_EQ(parse(g, "p_[u]") * parse(same, "p_[u]"), parse(g, "p_[u]"));
}

TEST(LpaStar, Examples) {
  auto g = shared(single_edge());
  EXPECT_EQ(lpa_star(parse(g, "s_[e]")), parse(g, "s*_[e]"));
  EXPECT_EQ(lpa_star(parse(g, "p_[v]")), parse(g, "p_[v]"));
  auto l = shared(line3());
  EXPECT_EQ(lpa_star(parse(l, "2·s_[e2.e1]·s*_[e1]")), parse(l, "2·s_[e1]·s*_[e2.e1]"));
}

TEST(NormalForm, Examples) {
  auto g = shared(single_edge());
  EXPECT_EQ(normal_form(parse(g, "s_[e]·s*_[e]")), parse(g, "p_[v]"));
  auto l = shared(two_loops());
  EXPECT_EQ(render(normal_form(parse(l, "s_[e]·s*_[e]"))), "p_[v] - s_[f]·s*_[f]");
  LpaElement x = parse(g, "p_[u]");
  EXPECT_EQ(normal_form(x + 0 * parse(g, "s_[e]")), x);
}

TEST(NormalForm, RelationsVanish) {
  auto l = shared(two_loops());
  EXPECT_TRUE(lpa_equal(parse(l, "s_[e]·s*_[e] + s_[f]·s*_[f]"), parse(l, "p_[v]")));
  EXPECT_FALSE(lpa_equal(parse(l, "s_[e]·s*_[e]"), parse(l, "p_[v]")));
}

TEST(Render, RoundTrip) {
  auto g = shared(line3());
  for (const std::string text : {"p_[a]", "s_[e1]", "-1/2·s*_[e2.e1]", "s_[e2]·s*_[e2] + 3·p_[c]", "0"}) {
    LpaElement x = parse(g, text);
    EXPECT_EQ(parse(g, render(x)), x) << text;
  }
  EXPECT_THROW(parse(g, "s_[nope]"), LpaError);
  EXPECT_THROW(parse(g, "s_[e1.e2]"), LpaError);
}

TEST(Ck, Examples) {
  for (const Graph& g : {single_edge(), two_loops(), two_cycle(), line3(), parallel_pair()}) {
    CkReport r = verify_ck(g);
    EXPECT_TRUE(r.all_passed());
    EXPECT_FALSE(r.checks.empty());
  }
  CkReport loops = verify_ck(two_loops());
  bool has_sum = std::any_of(loops.checks.begin(), loops.checks.end(),
                             [](const IdentityCheck& c) { return c.name == "p_[v] = sum over r(e)=v of s_e·s*_e" && c.passed; });
  EXPECT_TRUE(has_sum);
}

TEST(Represent, SingleEdge) {
  Graph g = single_edge();
  auto sg = shared(g);
  auto id = represent_acyclic(g, parse(sg, "p_[u] + p_[v]"));
  ASSERT_EQ(id.size(), 1u);
  EXPECT_EQ(id[0].source, g.vertex("u"));
  ASSERT_EQ(id[0].matrix.rows(), 2u);
  EXPECT_EQ(id[0].matrix(0, 0), 1);
  EXPECT_EQ(id[0].matrix(1, 1), 1);
  EXPECT_EQ(id[0].matrix(0, 1), 0);
  auto s = represent_acyclic(g, parse(sg, "s_[e]"));
  // basis [u], e: s_e sends [u] to e
  EXPECT_EQ(s[0].matrix(1, 0), 1);
  EXPECT_EQ(s[0].matrix(0, 0), 0);
  EXPECT_EQ(s[0].matrix(1, 1), 0);
  EXPECT_TRUE(represents_zero(represent_acyclic(g, LpaElement(sg))));
  EXPECT_THROW(represent_acyclic(one_loop(), LpaElement(shared(one_loop()))), PreconditionError);
}

class LpaProperties : public ::testing::TestWithParam<int> {};

TEST_P(LpaProperties, RingAxiomsInvolutionAndRewriting) {
  sampling::Rng rng(1000 + GetParam());
  std::vector<Graph> graphs = {two_loops(), two_cycle_plus_loop(), parallel_pair(),
                               sampling::random_acyclic_graph(rng, 4, 5)};
  for (const Graph& gr : graphs) {
    auto g = shared(gr);
    for (int i = 0; i < 8; ++i) {
      LpaElement a = sampling::random_element(g, rng, 3, 2);
      LpaElement b = sampling::random_element(g, rng, 3, 2);
      LpaElement c = sampling::random_element(g, rng, 3, 2);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(lpa_star(lpa_star(a)), a);
      EXPECT_EQ(lpa_star(a * b), lpa_star(b) * lpa_star(a));
      LpaElement nf = normal_form(a);
      EXPECT_EQ(normal_form(nf), nf);
      EXPECT_EQ(normal_form_randomized(a, rng), nf);
      LpaElement rel = sampling::random_relation(g, rng);
      EXPECT_TRUE(lpa_equal(a + b * rel * c, a));
      if (!has_cycle(gr)) {
        EXPECT_EQ(represent_acyclic(gr, nf), represent_acyclic(gr, a));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, LpaProperties, ::testing::Range(0, 4));
