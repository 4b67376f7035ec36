#include "tracelab/limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tracelab/error.hpp"

namespace tracelab {

namespace {

// Piece of `walk` on [t, t + len] starting at the jump with index `from`
// (from == npos means the piece starts at time 0 in the initial state).
TrajectorySegment piece(const TrajectorySegment& walk, std::size_t from, double len, bool killed) {
  TrajectorySegment p;
  p.horizon = len;
  p.killed = killed;
  double t0 = 0.0;
  std::size_t next = 0;
  if (from == std::numeric_limits<std::size_t>::max()) {
    p.start = walk.start;
  } else {
    p.start = walk.jumps[from].to;
    t0 = walk.jumps[from].time;
    next = from + 1;
  }
  for (; next < walk.jumps.size(); ++next) {
    const double t = walk.jumps[next].time - t0;
    if (t >= len) break;
    p.jumps.push_back({t, walk.jumps[next].to, walk.jumps[next].edge});
  }
  return p;
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Index of the first jump by time `by` into a vertex at distance `level`;
// kNone - 1 if the walk starts there, kNone if it never gets there in time.
std::size_t first_at_level(const TrajectorySegment& walk, const std::vector<std::uint32_t>& dist, std::uint32_t level,
                           double by, bool& at_start) {
  at_start = dist[walk.start] == level;
  if (at_start) return kNone;
  for (std::size_t i = 0; i < walk.jumps.size(); ++i) {
    if (walk.jumps[i].time > by) break;
    if (walk.jumps[i].to != kCemetery && dist[walk.jumps[i].to] == level) return i;
  }
  return kNone;
}

}  // namespace

StackFamily::StackFamily(const RootedGraph& g, std::uint32_t radius, double tau, std::size_t m, RngStream rng)
    : g_(&g), gen_(g.graph), radius_(radius), tau_(tau), m_(m), rng_(rng) {
  validate_roots(g);
  if (!(tau > 0.0) || !std::isfinite(tau)) fail(ErrorCode::InvalidTau, "tau must be positive and finite");
  if (m == 0) fail(ErrorCode::InvalidArgument, "m must be positive");
  dist_ = hop_distances(g.graph, g.roots);
  for (VertexId v = 0; v < dist_.size(); ++v) {
    if (dist_[v] <= radius) ball_.push_back(v);
    if (dist_[v] == radius) inner_.push_back(v);
    if (dist_[v] == radius + 1) outer_.push_back(v);
  }
  if (outer_.empty()) fail(ErrorCode::BoundaryEmpty, "no vertex at distance R+1");
  first_.resize(g.graph.num_vertices());
  second_.resize(g.graph.num_vertices());
  for (std::size_t i = 0; i < m; ++i) {
    const TrajectorySegment w = next_walk();
    bool at_start = false;
    const std::size_t j = first_at_level(w, dist_, radius + 1, tau, at_start);
    if (j == kNone) continue;
    first_[w.jumps[j].to].push_back(piece(w, j, tau, false));
  }
  for (std::size_t i = 0; i < m; ++i) push_second_kind(next_walk());
}

TrajectorySegment StackFamily::next_walk() {
  RngStream r = rng_.split(walks_used_++);
  return simulate_walk(gen_, g_->roots.front(), 2.0 * tau_, r);
}

void StackFamily::push_second_kind(const TrajectorySegment& w) {
  bool at_start = false;
  const std::size_t j = first_at_level(w, dist_, radius_, tau_, at_start);
  if (at_start) {
    second_[w.start].push_back(piece(w, kNone, tau_, true));
  } else if (j != kNone) {
    second_[w.jumps[j].to].push_back(piece(w, j, tau_, true));
  }
}

const std::vector<TrajectorySegment>& StackFamily::first_kind(VertexId v) const { return first_.at(v); }

std::size_t StackFamily::second_kind_size(VertexId v) const { return second_.at(v).size(); }

const TrajectorySegment& StackFamily::second_kind(VertexId v, std::size_t k) {
  if (v >= second_.size() || dist_[v] != radius_) fail(ErrorCode::NotAVertex, "not on the inner boundary");
  std::size_t fruitless = 0;
  while (second_[v].size() <= k) {
    const std::size_t before = second_[v].size();
    push_second_kind(next_walk());
    fruitless = second_[v].size() > before ? 0 : fruitless + 1;
    if (fruitless > 1000000) fail(ErrorCode::EmptyStackFamily, "walks never reach vertex " + std::to_string(v));
  }
  return second_[v][k];
}

EscapeEstimate escape_estimate(const StackFamily& stacks) {
  const auto& g = stacks.graph().graph;
  const auto& dist = stacks.distance();
  const std::uint32_t r = stacks.radius();
  EscapeEstimate est;
  est.escape.assign(g.num_vertices(), 0.0);
  est.measure.assign(g.num_vertices(), 0.0);
  for (VertexId w : stacks.outer_boundary()) {
    const auto& pieces = stacks.first_kind(w);
    if (pieces.empty()) continue;
    std::size_t escaped = 0;
    for (const auto& p : pieces) {
      bool hit = false;
      for (const auto& j : p.jumps)
        if (j.to != kCemetery && dist[j.to] <= r) {
          hit = true;
          break;
        }
      if (!hit) ++escaped;
    }
    est.escape[w] = static_cast<double>(escaped) / static_cast<double>(pieces.size());
  }
  for (VertexId v : stacks.inner_boundary()) {
    double s = 0.0;
    for (EdgeId e : g.incident(v)) {
      if (g.is_loop(e)) continue;
      const VertexId w = g.other(e, v);
      if (w == kCemetery || dist[w] != r + 1) continue;
      s += g.beta(e) * est.escape[w];
    }
    est.measure[v] = s;
    est.total += s;
  }
  return est;
}

CoxPointProcess sample_cox(StackFamily& stacks, const EscapeEstimate& estimate, double afrak, double sigma,
                           RngStream& rng) {
  if (!(afrak > 0.0) || !(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "afrak must be positive, sigma nonnegative");
  CoxPointProcess out;
  out.afrak = afrak;
  out.total_rate = estimate.total / afrak;
  out.provenance = "stacks";
  if (out.total_rate <= 0.0) return out;
  std::vector<VertexId> support;
  std::vector<double> cumulative;
  double acc = 0.0;
  for (VertexId v = 0; v < estimate.measure.size(); ++v) {
    if (estimate.measure[v] <= 0.0) continue;
    acc += estimate.measure[v];
    support.push_back(v);
    cumulative.push_back(acc);
  }
  std::vector<std::size_t> used(estimate.measure.size(), 0);
  double t = 0.0;
  for (;;) {
    t += rng.exponential(out.total_rate);
    if (t > sigma) break;
    const VertexId v = support[rng.pick_cumulative(cumulative)];
    out.atoms.push_back({t, kill_path(stacks.second_kind(v, used[v]++), stacks.tau())});
  }
  return out;
}

double regular_tree_escape(std::size_t d) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "degree must be at least 2");
  return static_cast<double>(d - 2) / static_cast<double>(d - 1);
}

LimitProcess sample_limit_process(const RootedGraph& tree, const LimitOptions& options, RngStream& rng) {
  if (!(options.afrak > 0.0) || !(options.sigma >= 0.0) || !(options.path_length > 0.0))
    fail(ErrorCode::InvalidArgument, "afrak and path length must be positive, sigma nonnegative");
  const auto& g = tree.graph;
  const Generator gen(g);
  LimitProcess out;
  auto& eq = out.equilibrium;
  eq.target = ball(tree, options.radius);
  eq.tau = std::numeric_limits<double>::infinity();
  const auto in = indicator(g.num_vertices(), eq.target);
  eq.measure.assign(g.num_vertices(), 0.0);
  std::vector<double> escape(g.num_vertices(), -1.0);
  RngStream escape_rng = rng.split(0);
  for (VertexId y : eq.target) {
    double s = 0.0;
    for (EdgeId e : g.incident(y)) {
      if (g.is_loop(e)) continue;
      const VertexId z = g.other(e, y);
      if (z == kCemetery || in[z]) continue;
      if (escape[z] < 0.0) {
        if (options.known_escape) {
          escape[z] = *options.known_escape;
        } else {
          RngStream rz = escape_rng.split(z);
          std::size_t escaped = 0;
          for (std::size_t k = 0; k < options.escape_samples; ++k) {
            Walker w(gen, z);
            bool hit = false;
            for (;;) {
              const Jump j = w.step(rz);
              if (j.time > options.escape_horizon) break;
              if (j.to != kCemetery && in[j.to]) {
                hit = true;
                break;
              }
            }
            if (!hit) ++escaped;
          }
          escape[z] = static_cast<double>(escaped) / static_cast<double>(options.escape_samples);
        }
      }
      s += g.beta(e) * escape[z];
    }
    eq.measure[y] = s;
    eq.capacity += s;
  }
  eq.total_alpha = g.total_alpha();
  eq.degenerate_capacity = eq.capacity <= 0.0;

  auto& p = out.process;
  p.afrak = options.afrak;
  p.total_rate = eq.capacity / options.afrak;
  p.provenance = "limit";
  if (p.total_rate <= 0.0) return out;
  std::vector<VertexId> support;
  std::vector<double> cumulative;
  double acc = 0.0;
  for (VertexId y : eq.target) {
    if (eq.measure[y] <= 0.0) continue;
    acc += eq.measure[y];
    support.push_back(y);
    cumulative.push_back(acc);
  }
  RngStream atom_rng = rng.split(1);
  double t = 0.0;
  for (std::size_t k = 0;; ++k) {
    t += atom_rng.exponential(p.total_rate);
    if (t > options.sigma) break;
    const VertexId y = support[atom_rng.pick_cumulative(cumulative)];
    RngStream wr = atom_rng.split(k);
    TrajectorySegment path = simulate_walk(gen, y, options.path_length, wr);
    p.atoms.push_back({t, kill_path(path, options.path_length)});
  }
  return out;
}

MainBound main_bound(const EquilibriumReport& exact, const std::vector<EscapeEstimate>& replicas, double a,
                     double afrak, double sigma) {
  if (replicas.empty()) fail(ErrorCode::EmptySample, "no stack replicas");
  MainBound mb;
  const double scale = a / exact.total_alpha;
  double l1_sum = 0.0;
  for (const auto& rep : replicas) {
    double l1 = 0.0;
    for (VertexId v = 0; v < exact.measure.size(); ++v) l1 += std::abs(rep.measure[v] / afrak - scale * exact.measure[v]);
    l1_sum += l1;
  }
  mb.mean_l1 = l1_sum / static_cast<double>(replicas.size());
  if (!exact.preconditions_met) return mb;
  const VisitBound vb = visit_coupling_bound(exact, a, sigma);
  mb.rho = vb.best_rho;
  double total = 0.0;
  for (const auto& rep : replicas) {
    double l1 = 0.0;
    for (VertexId v = 0; v < exact.measure.size(); ++v) l1 += std::abs(rep.measure[v] / afrak - scale * exact.measure[v]);
    total += std::min(1.0, vb.raw + sigma * l1);
  }
  mb.value = total / static_cast<double>(replicas.size());
  return mb;
}

}  // namespace tracelab
