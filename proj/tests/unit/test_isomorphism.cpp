#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "corpus.hpp"
#include "tracelab/isomorphism.hpp"
#include "tracelab/rng.hpp"

using namespace tracelab;
using tracelab::testing::corpus;

namespace {

// Same graph with vertices and edges renumbered by random permutations.
RootedGraph relabel(const RootedGraph& rg, RngStream& rng) {
  const auto& g = rg.graph;
  std::vector<VertexId> pv(g.num_vertices());
  std::iota(pv.begin(), pv.end(), 0u);
  std::shuffle(pv.begin(), pv.end(), rng);
  std::vector<EdgeId> pe(g.num_edges());
  std::iota(pe.begin(), pe.end(), 0u);
  std::shuffle(pe.begin(), pe.end(), rng);
  std::vector<double> alpha(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) alpha[pv[v]] = g.alpha(v);
  std::vector<std::pair<VertexId, VertexId>> ends(g.num_edges());
  std::vector<double> beta(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.endpoints(e);
    ends[pe[e]] = {pv[a], b == kCemetery ? kCemetery : pv[b]};
    beta[pe[e]] = g.beta(e);
  }
  RootedGraph out{WeightedMultiGraph(alpha, ends, beta, g.generalized()), {}};
  for (VertexId r : rg.roots) out.roots.push_back(pv[r]);
  return out;
}

}  // namespace

TEST(Isomorphism, ReflexiveOnCorpus) {
  for (const auto& [name, rg] : corpus()) EXPECT_TRUE(is_isomorphic(rg, rg).has_value()) << name;
}

TEST(Isomorphism, RelabelingBothDirections) {
  RngStream rng(31);
  for (const auto& [name, rg] : corpus()) {
    const auto other = relabel(rg, rng);
    const auto fwd = is_isomorphic(rg, other);
    ASSERT_TRUE(fwd.has_value()) << name;
    EXPECT_TRUE(is_isomorphic(other, rg).has_value()) << name;
    for (VertexId v = 0; v < rg.graph.num_vertices(); ++v)
      EXPECT_DOUBLE_EQ(other.graph.alpha(fwd->vertex_map[v]), rg.graph.alpha(v)) << name;
    for (EdgeId e = 0; e < rg.graph.num_edges(); ++e)
      EXPECT_DOUBLE_EQ(other.graph.beta(fwd->edge_map[e]), rg.graph.beta(e)) << name;
  }
}

TEST(Isomorphism, RejectsSinglePerturbation) {
  for (const auto& [name, rg] : corpus()) {
    const auto& g = rg.graph;
    {
      std::vector<double> alpha = g.alphas();
      alpha[g.num_vertices() - 1] *= 1.5;
      std::vector<std::pair<VertexId, VertexId>> ends;
      for (EdgeId e = 0; e < g.num_edges(); ++e) ends.push_back(g.endpoints(e));
      const RootedGraph p{WeightedMultiGraph(alpha, ends, g.betas()), rg.roots};
      EXPECT_FALSE(is_isomorphic(rg, p).has_value()) << name << " alpha";
    }
    if (g.num_edges() > 0) {
      std::vector<double> beta = g.betas();
      beta[0] *= 1.5;
      std::vector<std::pair<VertexId, VertexId>> ends;
      for (EdgeId e = 0; e < g.num_edges(); ++e) ends.push_back(g.endpoints(e));
      const RootedGraph p{WeightedMultiGraph(g.alphas(), ends, beta), rg.roots};
      EXPECT_FALSE(is_isomorphic(rg, p).has_value()) << name << " beta";
    }
  }
}

TEST(Isomorphism, RootsMatter) {
  const auto g = tracelab::testing::path_graph(3);
  const RootedGraph end{g, {0}}, mid{g, {1}}, other_end{g, {2}};
  EXPECT_FALSE(is_isomorphic(end, mid).has_value());
  EXPECT_TRUE(is_isomorphic(end, other_end).has_value());
  IsomorphismOptions loose;
  loose.match_roots = false;
  EXPECT_TRUE(is_isomorphic(end, mid, loose).has_value());
}

TEST(Isomorphism, FixedEdgesConstrainTheMap) {
  // Path 0-1-2 rooted at the middle: edges 0 and 1 may swap unless fixed.
  const RootedGraph a{tracelab::testing::path_graph(3), {1}};
  IsomorphismOptions fixed;
  fixed.fixed_edges = {{0, 0}};
  EXPECT_TRUE(is_isomorphic(a, a, fixed).has_value());
  fixed.fixed_edges = {{0, 1}};
  EXPECT_TRUE(is_isomorphic(a, a, fixed).has_value());
  const RootedGraph b{WeightedMultiGraph({1, 1, 1}, {{0, 1}, {1, 2}}, {1.0, 2.0}), {1}};
  fixed.fixed_edges = {{0, 1}};
  EXPECT_FALSE(is_isomorphic(b, b, fixed).has_value());
}
