#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracelab/equilibrium.hpp"
#include "tracelab/graph.hpp"
#include "tracelab/rng.hpp"
#include "tracelab/trace.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

// Stacks of path pieces built from walks started at the root o on [0, 2 tau].
// The first m walks feed first-kind stacks, indexed by the vertex where the
// walk first reaches distance R+1 (if it does so by time tau); the stacked
// piece is the next tau time units. Later walks feed second-kind stacks,
// indexed by the vertex where the walk first reaches distance R (by tau).
// Second-kind stacks are extended with fresh walks on demand.
class StackFamily {
 public:
  StackFamily(const RootedGraph& g, std::uint32_t radius, double tau, std::size_t m, RngStream rng);

  const RootedGraph& graph() const { return *g_; }
  std::uint32_t radius() const { return radius_; }
  double tau() const { return tau_; }
  std::size_t m() const { return m_; }
  const std::vector<VertexId>& ball() const { return ball_; }
  const std::vector<VertexId>& inner_boundary() const { return inner_; }
  const std::vector<VertexId>& outer_boundary() const { return outer_; }
  const std::vector<TrajectorySegment>& first_kind(VertexId v) const;
  // The k-th (0-based) second-kind piece at v, extending the stack if needed.
  const TrajectorySegment& second_kind(VertexId v, std::size_t k);
  std::size_t second_kind_size(VertexId v) const;
  std::size_t walks_used() const { return walks_used_; }
  const std::vector<std::uint32_t>& distance() const { return dist_; }

 private:
  // Simulates the next root walk and returns it.
  TrajectorySegment next_walk();
  void push_second_kind(const TrajectorySegment& walk);

  const RootedGraph* g_;
  Generator gen_;
  std::uint32_t radius_;
  double tau_;
  std::size_t m_;
  RngStream rng_;
  std::vector<std::uint32_t> dist_;
  std::vector<VertexId> ball_, inner_, outer_;
  std::vector<std::vector<TrajectorySegment>> first_;
  std::vector<std::vector<TrajectorySegment>> second_;
  std::size_t walks_used_ = 0;
};

// s_w = fraction of first-kind pieces at w that avoid the ball for tau time
// units (0 for an empty stack), and the estimated measure
// e(v) = 1_ball(v) alpha(v) sum_{w at distance R+1} L(v,w) s_w.
struct EscapeEstimate {
  std::vector<double> escape;   // indexed by vertex, meaningful on the outer boundary
  std::vector<double> measure;  // indexed by vertex
  double total = 0.0;
};

EscapeEstimate escape_estimate(const StackFamily& stacks);

// Point process of path pieces with intensity (1/afrak) Leb x sum_v e(v) delta.
struct CoxPointProcess {
  std::vector<PathAtom> atoms;
  double total_rate = 0.0;  // per unit time
  double afrak = 1.0;
  std::string provenance;
};

// Atoms at rate e(v)/afrak on [0, sigma]; the k-th atom at v carries the k-th
// second-kind piece of v, killed at tau.
CoxPointProcess sample_cox(StackFamily& stacks, const EscapeEstimate& estimate, double afrak, double sigma,
                           RngStream& rng);

struct LimitOptions {
  std::uint32_t radius = 1;
  double afrak = 1.0;
  double sigma = 1.0;
  double path_length = 1.0;      // atoms carry walks killed at this time
  std::size_t escape_samples = 2000;
  double escape_horizon = 200.0;  // walks longer than this count as escaped
  // Escape probability to use for every outside neighbour instead of Monte
  // Carlo (e.g. (d-2)/(d-1) on a d-regular tree).
  std::optional<double> known_escape;
};

// Limit process on a (truncated) tree: intensity (1/afrak) Leb x P^{e}, with
// e the escape equilibrium measure of the ball of radius R at the root.
struct LimitProcess {
  CoxPointProcess process;
  EquilibriumReport equilibrium;  // measure and capacity of the ball
};

LimitProcess sample_limit_process(const RootedGraph& tree, const LimitOptions& options, RngStream& rng);

// Regular-tree escape probability (d-2)/(d-1) from distance R+1 back to R.
double regular_tree_escape(std::size_t d);

// Average over stack replicas of
//   1 ^ (c rho + 2^-rho e^{a cap sigma / alpha(V)} + sigma ||e_hat/afrak - (a/alpha(V)) e||_1),
// with rho minimizing the first two terms; 1 when the preconditions fail.
struct MainBound {
  double value = 1.0;
  int rho = 0;
  double mean_l1 = 0.0;  // mean of ||e_hat/afrak - (a/alpha(V)) e||_1
};

MainBound main_bound(const EquilibriumReport& exact, const std::vector<EscapeEstimate>& replicas, double a,
                     double afrak, double sigma);

}  // namespace tracelab
