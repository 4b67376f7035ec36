#include "tracelab/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "tracelab/error.hpp"

namespace tracelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Walks through the piecewise-constant path given by a jump source and
// extracts visits. `end` is the time after which the path is unknown.
class VisitExtractor {
 public:
  VisitExtractor(std::function<Jump()> next, VertexId start, double end, const std::vector<char>& in, double tau)
      : next_(std::move(next)), in_(in), tau_(tau), end_(end), state_(start) {
    pending_ = next_();
  }

  // Entrance time T = inf{t >= from : X_t in B}, or +inf beyond `limit`.
  double next_entrance(double from, double limit) {
    for (;;) {
      if (seg_start_ > limit) return kInf;
      // The last known segment is closed at `end_`.
      const bool last = !(pending_.time <= end_);
      const double seg_end = last ? end_ : pending_.time;
      const bool reaches = last ? from <= seg_end : from < seg_end;
      if (reaches && inside(state_)) {
        const double t = std::max(seg_start_, from);
        return t > limit ? kInf : t;
      }
      if (last) return kInf;
      advance();
    }
  }

  // Path on [t, t + tau); t must lie in the current segment.
  TrajectorySegment record(double t) {
    TrajectorySegment p;
    p.start = state_;
    p.horizon = tau_;
    p.killed = true;
    const double stop = std::min(t + tau_, end_);
    if (stop < t + tau_) p.horizon = stop - t;
    while (pending_.time < stop) {
      advance();
      p.jumps.push_back({seg_start_ - t, state_, last_edge_});
    }
    return p;
  }

 private:
  bool inside(VertexId v) const { return v != kCemetery && v < in_.size() && in_[v]; }

  void advance() {
    seg_start_ = pending_.time;
    state_ = pending_.to;
    last_edge_ = pending_.edge;
    pending_ = next_();
  }

  std::function<Jump()> next_;
  const std::vector<char>& in_;
  double tau_;
  double end_;
  double seg_start_ = 0.0;
  VertexId state_;
  EdgeId last_edge_ = 0;
  Jump pending_{};
};

std::vector<VertexId> sorted_target(std::span<const VertexId> target) {
  if (target.empty()) fail(ErrorCode::EmptySet, "target set is empty");
  std::vector<VertexId> b(target.begin(), target.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

std::function<Jump()> stored_source(const TrajectorySegment& path) {
  std::size_t i = 0;
  return [&path, i]() mutable -> Jump {
    if (i < path.jumps.size()) return path.jumps[i++];
    return {kInf, kCemetery, 0};
  };
}

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) fail(ErrorCode::InvalidTau, "tau must be positive and finite");
}

}  // namespace

std::vector<double> entrance_times(const TrajectorySegment& path, std::span<const VertexId> target, double tau) {
  const VisitingMeasure xi = visiting_measure(path, target, tau, 1.0);
  std::vector<double> out;
  for (const auto& at : xi.atoms) out.push_back(at.time);
  return out;
}

VisitingMeasure visiting_measure(const TrajectorySegment& path, std::span<const VertexId> target, double tau,
                                 double a) {
  check_tau(tau);
  if (!(a > 0.0)) fail(ErrorCode::InvalidArgument, "a must be positive");
  VisitingMeasure xi;
  xi.target = sorted_target(target);
  xi.tau = tau;
  xi.a = a;
  xi.horizon = path.horizon;
  VertexId max_v = path.start;
  for (VertexId v : xi.target) max_v = std::max(max_v, v);
  for (const auto& j : path.jumps)
    if (j.to != kCemetery) max_v = std::max(max_v, j.to);
  std::vector<char> in(static_cast<std::size_t>(max_v) + 1, 0);
  for (VertexId v : xi.target) in[v] = 1;
  VisitExtractor ex(stored_source(path), path.start, path.horizon, in, tau);
  double from = 0.0;
  for (;;) {
    const double t = ex.next_entrance(from, path.horizon);
    if (!std::isfinite(t)) break;
    xi.atoms.push_back({t / a, ex.record(t)});
    from = t + tau;
  }
  return xi;
}

VisitingMeasure visiting_measure(const Generator& gen, std::span<const VertexId> target, double tau, double a,
                                 double horizon, RngStream& rng, VertexId start) {
  check_tau(tau);
  if (!(a > 0.0)) fail(ErrorCode::InvalidArgument, "a must be positive");
  if (!(horizon >= 0.0)) fail(ErrorCode::NonpositiveTime, "horizon must be nonnegative");
  VisitingMeasure xi;
  xi.target = sorted_target(target);
  xi.tau = tau;
  xi.a = a;
  xi.horizon = horizon;
  const auto in = indicator(gen.graph().num_vertices(), xi.target);
  if (start == kCemetery) start = gen.sample_stationary(rng);
  Walker w(gen, start);
  VisitExtractor ex([&]() { return w.step(rng); }, start, kInf, in, tau);
  double from = 0.0;
  for (;;) {
    const double t = ex.next_entrance(from, horizon);
    if (!std::isfinite(t)) break;
    xi.atoms.push_back({t / a, ex.record(t)});
    from = t + tau;
  }
  return xi;
}

std::vector<PathAtom> restrict_atoms(const std::vector<PathAtom>& atoms, double sigma) {
  if (!(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be nonnegative");
  std::vector<PathAtom> out;
  for (const auto& at : atoms)
    if (at.time <= sigma) out.push_back(at);
  return out;
}

VisitingMeasure restrict(const VisitingMeasure& xi, double sigma) {
  VisitingMeasure out = xi;
  out.atoms = restrict_atoms(xi.atoms, sigma);
  return out;
}

TrajectorySegment kill_path(const TrajectorySegment& path, double tau_kill) {
  if (!(tau_kill >= 0.0)) fail(ErrorCode::InvalidTau, "kill time must be nonnegative");
  TrajectorySegment out;
  out.start = path.start;
  out.killed = true;
  out.horizon = path.killed ? std::min(path.horizon, tau_kill) : tau_kill;
  for (const auto& j : path.jumps)
    if (j.time < out.horizon) out.jumps.push_back(j);
  return out;
}

std::vector<PathAtom> kill_atoms(const std::vector<PathAtom>& atoms, double tau_kill) {
  std::vector<PathAtom> out;
  out.reserve(atoms.size());
  for (const auto& at : atoms) out.push_back({at.time, kill_path(at.path, tau_kill)});
  return out;
}

VisitingMeasure kill_paths(const VisitingMeasure& xi, double tau_kill) {
  VisitingMeasure out = xi;
  out.atoms = kill_atoms(xi.atoms, tau_kill);
  return out;
}

AtomSummary summarize(const std::vector<PathAtom>& atoms, double sigma, int bins, std::size_t skeleton_jumps,
                      const std::function<std::uint64_t(VertexId)>& relabel) {
  if (bins <= 0 || !(sigma > 0.0)) fail(ErrorCode::InvalidArgument, "bins and sigma must be positive");
  auto lab = [&](VertexId v) -> std::uint64_t {
    if (v == kCemetery) return ~std::uint64_t{0};
    return relabel ? relabel(v) : v;
  };
  std::vector<std::vector<std::uint64_t>> items;
  for (const auto& at : atoms) {
    if (at.time > sigma) continue;
    std::vector<std::uint64_t> item;
    const int bin = std::min(bins - 1, static_cast<int>(at.time / sigma * bins));
    item.push_back(static_cast<std::uint64_t>(bin));
    item.push_back(lab(at.path.start));
    std::size_t k = 0;
    for (const auto& j : at.path.jumps) {
      if (k == skeleton_jumps) break;
      item.push_back(lab(j.to));
      ++k;
    }
    item.push_back(at.path.jumps.size() > skeleton_jumps ? 1 : 0);
    items.push_back(std::move(item));
  }
  std::sort(items.begin(), items.end());
  AtomSummary s;
  s.push_back(items.size());
  for (const auto& item : items) {
    s.push_back(item.size());
    s.insert(s.end(), item.begin(), item.end());
  }
  return s;
}

}  // namespace tracelab
