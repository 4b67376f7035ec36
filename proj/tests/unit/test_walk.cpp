#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "tracelab/error.hpp"
#include "tracelab/spectral.hpp"
#include "tracelab/stats.hpp"
#include "tracelab/walk.hpp"

using namespace tracelab;
using tracelab::testing::corpus;
using tracelab::testing::fixture;

TEST(Generator, DetailedBalanceAndStationarityOnCorpus) {
  for (const auto& [name, rg] : corpus()) {
    const auto& g = rg.graph;
    const Generator gen(g);
    const auto q = gen.dense();
    const auto pi = stationary(g);
    for (VertexId x = 0; x < g.num_vertices(); ++x) {
      double row = 0.0;
      for (VertexId y = 0; y < g.num_vertices(); ++y) {
        row += q(x, y);
        EXPECT_NEAR(g.alpha(x) * q(x, y), g.alpha(y) * q(y, x), 1e-10) << name;
      }
      EXPECT_NEAR(row, 0.0, 1e-10) << name;
    }
    for (VertexId y = 0; y < g.num_vertices(); ++y) {
      double flow = 0.0;
      for (VertexId x = 0; x < g.num_vertices(); ++x) flow += pi[x] * q(x, y);
      EXPECT_NEAR(flow, 0.0, 1e-10) << name;
    }
  }
}

TEST(Generator, RatesIgnoreLoopsAndSumParallelEdges) {
  const auto g = fixture("k2_parallel").graph;  // alpha = (2, 1), betas 1 and 0.5
  const Generator gen(g);
  EXPECT_DOUBLE_EQ(gen.rate(0, 1), 1.5 / 2.0);
  EXPECT_DOUBLE_EQ(gen.rate(1, 0), 1.5);
  const auto loop = fixture("k2_loop").graph;
  EXPECT_DOUBLE_EQ(Generator(loop).rate(1), 0.5);
}

TEST(Generator, CemeteryEdgesKill) {
  const auto g = build_graph({{0, 1.0}, {1, 1.0}},
                             {{0, Endpoint::vertex(0), Endpoint::vertex(1), 1.0},
                              {1, Endpoint::vertex(0), Endpoint::cemetery(), 2.0}},
                             true);
  const Generator gen(g);
  EXPECT_DOUBLE_EQ(gen.rate(0), 3.0);
  EXPECT_DOUBLE_EQ(gen.rate(0, kCemetery), 2.0);
  const auto q = gen.dense();
  EXPECT_DOUBLE_EQ(q(0, 0), -3.0);
  EXPECT_DOUBLE_EQ(q(0, 1), 1.0);
}

TEST(Walk, K2TransitionClosedForm) {
  const auto g = fixture("k2").graph;
  for (double t : {0.1, 0.5, 1.0, 3.0}) {
    const auto p = transition_probs_exact(g, t);
    EXPECT_NEAR(p(0, 0), 0.5 * (1.0 + std::exp(-2.0 * t)), 1e-12);
    EXPECT_NEAR(p(0, 1), 0.5 * (1.0 - std::exp(-2.0 * t)), 1e-12);
    EXPECT_NEAR(mixing_distance_exact(g, t), 0.5 * std::exp(-2.0 * t), 1e-12);
  }
}

TEST(Walk, MixingDistanceMonotone) {
  for (const auto& [name, rg] : corpus())
    for (double tau : {0.25, 1.0, 4.0})
      EXPECT_LE(mixing_distance_exact(rg.graph, 2 * tau), mixing_distance_exact(rg.graph, tau) + 1e-12) << name;
}

TEST(Walk, MixingDistanceMonteCarloAgrees) {
  const auto g = fixture("c5_weighted").graph;
  RngStream r(3);
  const auto mc = mixing_distance_mc(g, 0.7, 4000, r);
  EXPECT_NEAR(mc.value, mixing_distance_exact(g, 0.7), mc.half_width + 0.02);
}

TEST(Walk, DenseCap) {
  const auto g = tracelab::testing::cycle_graph(401);
  EXPECT_THROW(transition_probs_exact(g, 1.0), Error);
}

TEST(Walk, HoldingTimeMean) {
  const auto g = fixture("multi4").graph;
  const Generator gen(g);
  RngStream r(8);
  std::vector<double> holds;
  for (int i = 0; i < 20000; ++i) {
    Walker w(gen, 2);
    holds.push_back(w.step(r).time);
  }
  const auto m = mean_sd(holds);
  EXPECT_NEAR(m.mean, 1.0 / gen.rate(2), 3.0 * m.se());
}

TEST(Walk, JumpLawMatchesRates) {
  const auto g = fixture("multi6_random").graph;
  const Generator gen(g);
  RngStream r(9);
  const VertexId x = 0;
  std::vector<std::uint64_t> counts(g.num_vertices(), 0);
  for (int i = 0; i < 50000; ++i) {
    Walker w(gen, x);
    ++counts[w.step(r).to];
  }
  std::vector<double> probs;
  std::vector<std::uint64_t> obs;
  for (VertexId y = 0; y < g.num_vertices(); ++y) {
    if (y == x) {
      EXPECT_EQ(counts[y], 0u);
      continue;
    }
    probs.push_back(gen.rate(x, y) / gen.rate(x));
    obs.push_back(counts[y]);
  }
  EXPECT_TRUE(chi_square_gof(obs, probs).pass);
}

TEST(Walk, IsolatedStartRejected) {
  const WeightedMultiGraph g({1.0, 1.0}, {{0, 0}}, {1.0});
  const Generator gen(g);
  RngStream r(1);
  EXPECT_THROW(simulate_walk(gen, 1, 1.0, r), Error);
  EXPECT_THROW(simulate_walk(gen, 0, 1.0, r), Error);  // only a loop
}

TEST(Walk, TrajectoryStateAt) {
  const auto g = fixture("path10").graph;
  const Generator gen(g);
  RngStream r(10);
  const auto p = simulate_walk(gen, 4, 50.0, r);
  EXPECT_EQ(p.state_at(0.0), 4u);
  for (const auto& j : p.jumps) {
    EXPECT_LE(j.time, 50.0);
    EXPECT_EQ(p.state_at(j.time), j.to);
  }
  const auto range = range_of(p);
  EXPECT_TRUE(std::is_sorted(range.begin(), range.end()));
}

TEST(HittingTail, SpectralAgreesWithExpm) {
  for (const auto& [name, rg] : corpus()) {
    const std::vector<VertexId> target = {rg.roots.front()};
    const KilledSpectrum spec(rg.graph, target);
    for (double t : {0.0, 0.3, 1.0, 5.0}) {
      const auto a = hitting_tail_exact(rg.graph, target, t);
      const auto b = spec.survival_all(t);
      for (VertexId z = 0; z < a.size(); ++z) EXPECT_NEAR(a[z], b[z], 1e-9) << name << " t=" << t;
    }
  }
}

TEST(HittingTail, OneAtZeroAndNonincreasing) {
  for (const auto& [name, rg] : corpus()) {
    const std::vector<VertexId> target = {rg.roots.front()};
    auto prev = hitting_tail_exact(rg.graph, target, 0.0);
    for (VertexId z = 0; z < prev.size(); ++z) EXPECT_DOUBLE_EQ(prev[z], z == target[0] ? 0.0 : 1.0) << name;
    for (double t = 0.5; t <= 5.0; t += 0.5) {
      const auto cur = hitting_tail_exact(rg.graph, target, t);
      for (VertexId z = 0; z < cur.size(); ++z) EXPECT_LE(cur[z], prev[z] + 1e-12) << name;
      prev = cur;
    }
  }
}

TEST(HittingTail, K2ClosedForm) {
  const auto g = fixture("k2").graph;
  const std::vector<VertexId> target = {0};
  EXPECT_NEAR(hitting_tail_exact(g, target, 1.3)[1], std::exp(-1.3), 1e-12);
  const KilledSpectrum spec(g, target);
  EXPECT_NEAR(spec.survival(1).integral(), 1.0, 1e-12);
}
