#include "tracelab/walk.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "tracelab/error.hpp"

namespace tracelab {

Generator::Generator(const WeightedMultiGraph& g) : g_(&g) {
  const std::size_t n = g.num_vertices();
  out_rate_.assign(n, 0.0);
  offsets_.assign(n + 1, 0);
  for (VertexId x = 0; x < n; ++x) {
    double acc = 0.0;
    for (EdgeId e : g.incident(x)) {
      if (g.is_loop(e)) continue;
      acc += g.beta(e);
      moves_.push_back(e);
      cumulative_.push_back(acc);
    }
    out_rate_[x] = acc / g.alpha(x);
    offsets_[x + 1] = moves_.size();
  }
  double acc = 0.0;
  alpha_cumulative_.reserve(n);
  for (VertexId x = 0; x < n; ++x) {
    acc += g.alpha(x);
    alpha_cumulative_.push_back(acc);
  }
}

double Generator::rate(VertexId x, VertexId y) const {
  if (x == y) return 0.0;
  double s = 0.0;
  for (EdgeId e : g_->incident(x))
    if (!g_->is_loop(e) && g_->other(e, x) == y) s += g_->beta(e);
  return s / g_->alpha(x);
}

EdgeId Generator::sample_edge(VertexId x, RngStream& rng) const {
  const std::size_t lo = offsets_[x], hi = offsets_[x + 1];
  if (lo == hi) fail(ErrorCode::IsolatedVertex, "vertex " + std::to_string(x) + " has no jump");
  if (hi - lo == 1) return moves_[lo];
  std::span<const double> cum(cumulative_.data() + lo, hi - lo);
  return moves_[lo + rng.pick_cumulative(cum)];
}

VertexId Generator::sample_stationary(RngStream& rng) const {
  return static_cast<VertexId>(rng.pick_cumulative(alpha_cumulative_));
}

DenseMatrix Generator::dense(std::size_t cap) const {
  const std::size_t n = g_->num_vertices();
  if (n > cap) fail(ErrorCode::TooLargeForDense, std::to_string(n) + " vertices");
  DenseMatrix m(n, n);
  for (VertexId x = 0; x < n; ++x) {
    for (EdgeId e : g_->incident(x)) {
      if (g_->is_loop(e)) continue;
      const VertexId y = g_->other(e, x);
      const double r = g_->beta(e) / g_->alpha(x);
      if (y != kCemetery) m(x, y) += r;
      m(x, x) -= r;
    }
  }
  return m;
}

VertexId TrajectorySegment::state_at(double t) const {
  if (t < 0.0) fail(ErrorCode::InvalidArgument, "negative time");
  if (killed && t >= horizon) return kCemetery;
  VertexId s = start;
  for (const auto& j : jumps) {
    if (j.time > t) break;
    s = j.to;
  }
  return s;
}

Walker::Walker(const Generator& gen, VertexId start, double time) : gen_(&gen), position_(start), time_(time) {
  if (start != kCemetery && start >= gen.graph().num_vertices())
    fail(ErrorCode::NotAVertex, "start " + std::to_string(start));
}

bool Walker::stuck() const { return position_ == kCemetery || gen_->rate(position_) == 0.0; }

Jump Walker::step(RngStream& rng) {
  if (stuck()) {
    time_ = std::numeric_limits<double>::infinity();
    return {time_, position_, kCemetery};
  }
  time_ += rng.exponential(gen_->rate(position_));
  const EdgeId e = gen_->sample_edge(position_, rng);
  position_ = gen_->graph().other(e, position_);
  return {time_, position_, e};
}

std::vector<double> stationary(const WeightedMultiGraph& g) {
  const double total = g.total_alpha();
  std::vector<double> pi(g.num_vertices());
  for (VertexId v = 0; v < pi.size(); ++v) pi[v] = g.alpha(v) / total;
  return pi;
}

TrajectorySegment simulate_walk(const Generator& gen, VertexId start, double horizon, RngStream& rng) {
  if (!(horizon > 0.0)) fail(ErrorCode::NonpositiveTime, "horizon must be positive");
  if (start >= gen.graph().num_vertices()) fail(ErrorCode::NotAVertex, "start " + std::to_string(start));
  if (gen.rate(start) == 0.0) fail(ErrorCode::IsolatedVertex, "start " + std::to_string(start));
  TrajectorySegment path;
  path.start = start;
  path.horizon = horizon;
  Walker w(gen, start);
  for (;;) {
    const Jump j = w.step(rng);
    if (j.time > horizon) break;
    path.jumps.push_back(j);
    if (j.to == kCemetery) break;
  }
  return path;
}

std::vector<VertexId> range_of(const TrajectorySegment& path) {
  std::vector<VertexId> out;
  if (path.start != kCemetery) out.push_back(path.start);
  for (const auto& j : path.jumps)
    if (j.to != kCemetery) out.push_back(j.to);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXd out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

DenseMatrix transition_probs_exact(const WeightedMultiGraph& g, double t, std::size_t cap) {
  if (!(t >= 0.0)) fail(ErrorCode::NonpositiveTime, "negative time");
  const Generator gen(g);
  const Eigen::MatrixXd l = to_eigen(gen.dense(cap));
  const Eigen::MatrixXd p = (t * l).exp();
  DenseMatrix out(p.rows(), p.cols());
  for (std::size_t i = 0; i < out.rows; ++i)
    for (std::size_t j = 0; j < out.cols; ++j) out(i, j) = p(i, j);
  return out;
}

double mixing_distance_exact(const WeightedMultiGraph& g, double t, std::size_t cap) {
  const DenseMatrix p = transition_probs_exact(g, t, cap);
  const auto pi = stationary(g);
  double worst = 0.0;
  for (std::size_t v = 0; v < p.rows; ++v) {
    double l1 = 0.0;
    for (std::size_t w = 0; w < p.cols; ++w) l1 += std::abs(p(v, w) - pi[w]);
    worst = std::max(worst, 0.5 * l1);
  }
  return worst;
}

McEstimate mixing_distance_mc(const WeightedMultiGraph& g, double t, std::size_t samples_per_vertex, RngStream& rng) {
  if (!(t > 0.0)) fail(ErrorCode::NonpositiveTime, "time must be positive");
  if (samples_per_vertex == 0) fail(ErrorCode::EmptySample, "no samples");
  const Generator gen(g);
  const auto pi = stationary(g);
  McEstimate est;
  std::vector<double> counts(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    RngStream r = rng.split(v);
    std::fill(counts.begin(), counts.end(), 0.0);
    for (std::size_t s = 0; s < samples_per_vertex; ++s) {
      Walker w(gen, v);
      VertexId at = v;
      for (;;) {
        const VertexId before = w.position();
        const Jump j = w.step(r);
        if (j.time > t) {
          at = before;
          break;
        }
      }
      counts[at] += 1.0;
    }
    double l1 = 0.0;
    for (VertexId w = 0; w < g.num_vertices(); ++w) l1 += std::abs(counts[w] / samples_per_vertex - pi[w]);
    est.value = std::max(est.value, 0.5 * l1);
  }
  est.half_width = 3.0 * std::sqrt(0.25 / static_cast<double>(samples_per_vertex));
  return est;
}

std::vector<double> hitting_tail_exact(const WeightedMultiGraph& g, std::span<const VertexId> set, double t,
                                       std::size_t cap) {
  if (set.empty()) fail(ErrorCode::EmptySet, "target set is empty");
  if (!(t >= 0.0)) fail(ErrorCode::NonpositiveTime, "negative time");
  const std::size_t n = g.num_vertices();
  if (n > cap) fail(ErrorCode::TooLargeForDense, std::to_string(n) + " vertices");
  const auto in = indicator(n, set);
  std::vector<VertexId> outside;
  std::vector<std::size_t> local(n, 0);
  for (VertexId v = 0; v < n; ++v)
    if (!in[v]) {
      local[v] = outside.size();
      outside.push_back(v);
    }
  std::vector<double> tail(n, 0.0);
  if (outside.empty()) return tail;
  const DenseMatrix l = Generator(g).dense(cap);
  Eigen::MatrixXd q(outside.size(), outside.size());
  for (std::size_t i = 0; i < outside.size(); ++i)
    for (std::size_t j = 0; j < outside.size(); ++j) q(i, j) = l(outside[i], outside[j]);
  const Eigen::MatrixXd p = (t * q).exp();
  const Eigen::VectorXd rows = p.rowwise().sum();
  for (std::size_t i = 0; i < outside.size(); ++i) tail[outside[i]] = std::clamp(rows(i), 0.0, 1.0);
  return tail;
}

}  // namespace tracelab
