#include <gtest/gtest.h>

#include "corpus.hpp"
#include "tracelab/error.hpp"
#include "tracelab/trace.hpp"

using namespace tracelab;
using tracelab::testing::fixture;

namespace {

// Hand-built path on path10: 0 -> 1 at t=1, 1 -> 0 at 1.5, 0 -> 1 at 4, 1 -> 2 at 4.2.
TrajectorySegment hand_path() {
  TrajectorySegment p;
  p.start = 0;
  p.horizon = 10.0;
  p.jumps = {{1.0, 1, 0}, {1.5, 0, 0}, {4.0, 1, 0}, {4.2, 2, 1}};
  return p;
}

}  // namespace

TEST(EntranceTimes, HandPath) {
  const std::vector<VertexId> b = {1};
  // T1 = 1; next search from 3: at 4; next from 6: never.
  EXPECT_EQ(entrance_times(hand_path(), b, 2.0), (std::vector<double>{1.0, 4.0}));
  // With tau = 0.25 the walk is still in B at 1.25.
  EXPECT_EQ(entrance_times(hand_path(), b, 0.25), (std::vector<double>{1.0, 1.25, 4.0}));
}

TEST(EntranceTimes, InfimumAttainedWhenInside) {
  // Starting inside B: T1 = 0 and T2 = tau if still there.
  const std::vector<VertexId> b = {0};
  const auto t = entrance_times(hand_path(), b, 0.5);
  ASSERT_GE(t.size(), 2u);
  EXPECT_DOUBLE_EQ(t[0], 0.0);
  EXPECT_DOUBLE_EQ(t[1], 0.5);
  EXPECT_DOUBLE_EQ(t[2], 1.5);
}

TEST(VisitingMeasure, AtomsAndPaths) {
  const std::vector<VertexId> b = {1};
  const auto xi = visiting_measure(hand_path(), b, 2.0, 4.0);
  ASSERT_EQ(xi.atoms.size(), 2u);
  EXPECT_DOUBLE_EQ(xi.atoms[0].time, 0.25);
  EXPECT_EQ(xi.atoms[0].path.start, 1u);
  ASSERT_EQ(xi.atoms[0].path.jumps.size(), 1u);
  EXPECT_DOUBLE_EQ(xi.atoms[0].path.jumps[0].time, 0.5);
  EXPECT_TRUE(xi.atoms[0].path.killed);
  EXPECT_DOUBLE_EQ(xi.atoms[0].path.horizon, 2.0);
  EXPECT_DOUBLE_EQ(xi.atoms[1].time, 1.0);
  EXPECT_EQ(xi.atoms[1].path.jumps.size(), 1u);
}

TEST(VisitingMeasure, GapsAtLeastTau) {
  const auto g = fixture("c20").graph;
  const Generator gen(g);
  const std::vector<VertexId> b = {0, 1};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream r(seed);
    const double tau = 0.5 + static_cast<double>(seed % 4);
    const auto xi = visiting_measure(gen, b, tau, 1.0, 500.0, r);
    for (std::size_t k = 1; k < xi.atoms.size(); ++k)
      EXPECT_GE(xi.atoms[k].time - xi.atoms[k - 1].time, tau - 1e-12);
    for (const auto& atom : xi.atoms) {
      EXPECT_TRUE(atom.path.start == 0 || atom.path.start == 1);
      for (const auto& j : atom.path.jumps) EXPECT_LT(j.time, tau);
    }
  }
}

TEST(VisitingMeasure, OnlineMatchesOffline) {
  const auto g = fixture("c5_weighted").graph;
  const Generator gen(g);
  const std::vector<VertexId> b = {2};
  RngStream r1(77), r2(77);
  const VertexId start = 0;
  const auto online = visiting_measure(gen, b, 1.5, 2.0, 300.0, r1, start);
  const auto path = simulate_walk(gen, start, 300.0 + 1.5, r2);
  const auto offline = visiting_measure(path, b, 1.5, 2.0);
  const auto cut = restrict(offline, 150.0);
  ASSERT_EQ(online.atoms.size(), cut.atoms.size());
  for (std::size_t k = 0; k < online.atoms.size(); ++k) {
    EXPECT_DOUBLE_EQ(online.atoms[k].time, cut.atoms[k].time);
    EXPECT_EQ(online.atoms[k].path.start, cut.atoms[k].path.start);
    EXPECT_EQ(online.atoms[k].path.jumps.size(), cut.atoms[k].path.jumps.size());
  }
}

TEST(VisitingMeasure, DoublyRootedTarget) {
  const RootedGraph rg{tracelab::testing::cycle_graph(30), {0, 15}};
  const auto b = ball(rg, 1);
  EXPECT_EQ(b.size(), 6u);
  const Generator gen(rg.graph);
  RngStream r(5);
  const auto xi = visiting_measure(gen, b, 2.0, 1.0, 2000.0, r);
  EXPECT_GT(xi.atoms.size(), 0u);
}

TEST(VisitingMeasure, Errors) {
  const std::vector<VertexId> b = {1};
  EXPECT_THROW(visiting_measure(hand_path(), b, 0.0, 1.0), Error);
  EXPECT_THROW(visiting_measure(hand_path(), b, 1.0, 0.0), Error);
  const std::vector<VertexId> none;
  EXPECT_THROW(visiting_measure(hand_path(), none, 1.0, 1.0), Error);
}

TEST(Kill, CommutesWithRestrict) {
  const auto g = fixture("grid3_weighted").graph;
  const Generator gen(g);
  const std::vector<VertexId> b = {4};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RngStream r(seed);
    const auto xi = visiting_measure(gen, b, 3.0, 5.0, 400.0, r);
    const auto a = kill_paths(restrict(xi, 40.0), 1.0);
    const auto c = restrict(kill_paths(xi, 1.0), 40.0);
    ASSERT_EQ(a.atoms.size(), c.atoms.size());
    for (std::size_t k = 0; k < a.atoms.size(); ++k) {
      EXPECT_EQ(a.atoms[k].path.jumps.size(), c.atoms[k].path.jumps.size());
      EXPECT_DOUBLE_EQ(a.atoms[k].path.horizon, 1.0);
      for (const auto& j : a.atoms[k].path.jumps) EXPECT_LT(j.time, 1.0);
    }
  }
}

TEST(Summarize, SortedAndIndependentOfAtomOrder) {
  const std::vector<VertexId> b = {1};
  const auto xi = visiting_measure(hand_path(), b, 0.25, 1.0);
  auto atoms = xi.atoms;
  const auto s1 = summarize(atoms, 10.0, 8, 8);
  std::reverse(atoms.begin(), atoms.end());
  EXPECT_EQ(s1, summarize(atoms, 10.0, 8, 8));
  EXPECT_EQ(s1.front(), atoms.size());
  EXPECT_EQ(summarize(atoms, 0.5, 8, 8), AtomSummary{0});
}
