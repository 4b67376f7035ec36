#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

inline constexpr std::size_t kDenseCap = 400;

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Jump rates L(x,y) = sum of beta_e / alpha_x over edges joining x and y,
// x != y. Loops never move the walk. In a generalized graph an edge to the
// cemetery kills the walk.
class Generator {
 public:
  explicit Generator(const WeightedMultiGraph& g);

  const WeightedMultiGraph& graph() const { return *g_; }
  // Total jump rate L_x.
  double rate(VertexId x) const { return out_rate_[x]; }
  // L(x,y) for x != y (y may be kCemetery).
  double rate(VertexId x, VertexId y) const;

  // Edge used by the next jump out of x, chosen proportionally to beta.
  EdgeId sample_edge(VertexId x, RngStream& rng) const;
  VertexId sample_stationary(RngStream& rng) const;

  // Dense generator matrix; cemetery rates appear only on the diagonal.
  DenseMatrix dense(std::size_t cap = kDenseCap) const;

 private:
  const WeightedMultiGraph* g_;
  std::vector<double> out_rate_;
  std::vector<std::size_t> offsets_;
  std::vector<EdgeId> moves_;
  std::vector<double> cumulative_;
  std::vector<double> alpha_cumulative_;
};

struct Jump {
  double time;
  VertexId to;  // kCemetery when the walk is killed
  EdgeId edge;
};

// Right-continuous path on [0, horizon]. When `killed` is set the state is
// the cemetery from `horizon` on.
struct TrajectorySegment {
  VertexId start = kCemetery;
  double horizon = 0.0;
  bool killed = false;
  std::vector<Jump> jumps;

  VertexId state_at(double t) const;
  VertexId final_state() const { return jumps.empty() ? start : jumps.back().to; }
};

// Steps a walk jump by jump.
class Walker {
 public:
  Walker(const Generator& gen, VertexId start, double time = 0.0);

  VertexId position() const { return position_; }
  double time() const { return time_; }
  bool stuck() const;
  // Performs the next jump. A stuck walk (zero rate or killed) advances its
  // clock to +infinity and returns a jump to its current position.
  Jump step(RngStream& rng);

 private:
  const Generator* gen_;
  VertexId position_;
  double time_;
};

std::vector<double> stationary(const WeightedMultiGraph& g);

TrajectorySegment simulate_walk(const Generator& gen, VertexId start, double horizon, RngStream& rng);

// Vertices visited by the path, ascending.
std::vector<VertexId> range_of(const TrajectorySegment& path);

// exp(tL) by Pade scaling and squaring.
DenseMatrix transition_probs_exact(const WeightedMultiGraph& g, double t, std::size_t cap = kDenseCap);

// sup_v TV(P_t(v,.), pi).
double mixing_distance_exact(const WeightedMultiGraph& g, double t, std::size_t cap = kDenseCap);

struct McEstimate {
  double value = 0.0;
  double half_width = 0.0;  // 3 sigma
};

McEstimate mixing_distance_mc(const WeightedMultiGraph& g, double t, std::size_t samples_per_vertex, RngStream& rng);

// P^z(T_B > t) for every z; zero on B.
std::vector<double> hitting_tail_exact(const WeightedMultiGraph& g, std::span<const VertexId> set, double t,
                                       std::size_t cap = kDenseCap);

}  // namespace tracelab
