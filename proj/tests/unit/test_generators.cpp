#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "tracelab/error.hpp"
#include "tracelab/generators.hpp"
#include "tracelab/stats.hpp"

using namespace tracelab;

TEST(DegreeDistribution, BasicLaws) {
  const DegreeDistribution d({0.0, 0.5, 0.0, 0.5});
  EXPECT_DOUBLE_EQ(d.mean(), 2.0);
  EXPECT_DOUBLE_EQ(d.pgf(1.0), 1.0);
  EXPECT_DOUBLE_EQ(d.pgf(0.5), 0.5 * 0.5 + 0.5 * 0.125);
  const auto s = size_bias(d);
  EXPECT_DOUBLE_EQ(s.probs()[1], 0.25);
  EXPECT_DOUBLE_EQ(s.probs()[3], 0.75);
  EXPECT_THROW(size_bias(DegreeDistribution({1.0})), Error);
  EXPECT_THROW(DegreeDistribution({0.5, 0.2}), Error);
  const auto p = DegreeDistribution::poisson(2.0, 30);
  EXPECT_NEAR(p.mean(), 2.0, 1e-9);
}

TEST(DegreeDistribution, SamplesMatchLaw) {
  const DegreeDistribution d({0.1, 0.2, 0.3, 0.4});
  RngStream r(1);
  std::vector<std::uint64_t> counts(4, 0);
  for (int i = 0; i < 40000; ++i) ++counts[d.sample(r)];
  EXPECT_TRUE(chi_square_gof(counts, d.probs()).pass);
}

TEST(ConfigurationModel, EvenDegreeSumAndWeights) {
  const DegreeDistribution d({0.0, 0.5, 0.0, 0.5});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream r(seed);
    const auto degrees = sample_degree_sequence(d, 101, r);
    const auto sum = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
    EXPECT_EQ(sum % 2, 0u);
    RngStream r2(seed + 100);
    const auto g = pair_half_edges(degrees, r2);
    EXPECT_EQ(g.num_edges(), sum / 2);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      EXPECT_EQ(g.degree(v), degrees[v]);
      EXPECT_DOUBLE_EQ(g.alpha(v), static_cast<double>(degrees[v]));
    }
    EXPECT_DOUBLE_EQ(g.total_alpha(), static_cast<double>(sum));
  }
}

TEST(ConfigurationModel, OddSumRejectedByPairing) {
  const std::vector<std::size_t> degrees = {1, 2};
  RngStream r(1);
  EXPECT_THROW(pair_half_edges(degrees, r), Error);
}

TEST(ConfigurationModel, LoopProbabilityMatchesPairing) {
  // Two vertices of degree 2: the pairing of 4 half-edges gives two loops
  // with probability 1/3.
  const std::vector<std::size_t> degrees = {2, 2};
  std::size_t loops = 0;
  const int n = 30000;
  for (int i = 0; i < n; ++i) {
    RngStream r = RngStream(5).split(i);
    const auto g = pair_half_edges(degrees, r);
    loops += g.is_loop(0) ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(loops) / n, 1.0 / 3.0, 4.0 * std::sqrt(2.0 / 9.0 / n));
}

TEST(ErdosRenyi, EdgeCountAndSimple) {
  RngStream r(2);
  const auto g = erdos_renyi_gnm(50, 200, r);
  EXPECT_EQ(g.num_edges(), 200u);
  std::set<std::pair<VertexId, VertexId>> seen;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [a, b] = g.endpoints(e);
    EXPECT_NE(a, b);
    if (a > b) std::swap(a, b);
    EXPECT_TRUE(seen.insert({a, b}).second);
  }
  RngStream r2(3);
  EXPECT_EQ(erdos_renyi_gnm(5, 100, r2).num_edges(), 10u);
}

TEST(GwSurvival, OracleFixedPoint) {
  const DegreeDistribution d({0.0, 0.5, 0.0, 0.5});
  const auto s = gw_survival(d, size_bias(d));
  EXPECT_NEAR(s.extinction, 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(s.survival, 22.0 / 27.0, 1e-10);
  const auto reg = DegreeDistribution::regular(3);
  EXPECT_NEAR(gw_survival(reg, size_bias(reg)).survival, 1.0, 1e-12);
  // A bi-infinite line never dies out.
  const auto two = DegreeDistribution::regular(2);
  EXPECT_NEAR(gw_survival(two, size_bias(two)).survival, 1.0, 1e-12);
  // Subcritical: D* - 1 is 0 or 1 with equal mass, extinction certain.
  const DegreeDistribution sub({0.0, 2.0 / 3.0, 1.0 / 3.0});
  EXPECT_NEAR(gw_survival(sub, size_bias(sub)).survival, 0.0, 1e-9);
}

TEST(GwpTree, RegularTreeShape) {
  RngStream r(4);
  GwpTreeOptions opts;
  opts.max_depth = 5;
  const auto reg = DegreeDistribution::regular(3);
  const auto t = sample_gwp_tree(reg, size_bias(reg), r, opts);
  EXPECT_EQ(t.tree.graph.num_vertices(), 1u + 3 + 6 + 12 + 24 + 48);
  EXPECT_TRUE(t.truncated);
  for (VertexId v = 0; v < t.tree.graph.num_vertices(); ++v) EXPECT_DOUBLE_EQ(t.tree.graph.alpha(v), 3.0);
}

TEST(GwpTree, RootChildrenFollowD) {
  const DegreeDistribution d({0.0, 0.5, 0.0, 0.5});
  std::vector<std::uint64_t> counts(4, 0);
  GwpTreeOptions opts;
  opts.max_depth = 1;
  for (int i = 0; i < 10000; ++i) {
    RngStream r = RngStream(6).split(i);
    ++counts[sample_gwp_tree(d, size_bias(d), r, opts).children[0]];
  }
  EXPECT_TRUE(chi_square_gof(counts, d.probs()).pass);
}

TEST(LargestComponent, PicksLargest) {
  const WeightedMultiGraph g({1, 1, 1, 1, 1}, {{0, 1}, {2, 3}, {3, 4}}, {1, 1, 1});
  RngStream r(7);
  const auto lc = largest_component(g, r);
  EXPECT_EQ(lc.graph.num_vertices(), 3u);
  EXPECT_EQ(connected_components(g).size(), 2u);
}

TEST(EllSchedule, Values) {
  const auto s = ell_schedule(3.0, 10000);
  EXPECT_EQ(s.ell, 15u);
  EXPECT_EQ(s.ell_prime, 4u);
  EXPECT_EQ(s.m, 4u);
  EXPECT_NEAR(s.tau_n, std::pow(std::log(10000.0), 2), 1e-9);
  EXPECT_DOUBLE_EQ(s.a_n, 10000.0);
  EXPECT_THROW(ell_schedule(2.0, 100), Error);
  // Exponent saturates at 1/2 for large tau.
  EXPECT_EQ(ell_schedule(100.0, 10000).ell, static_cast<std::size_t>(std::floor(std::pow(10000.0, 0.45))));
}
