#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/rng.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

// An atom (time, path) of a point process on [0,inf) x path space. Paths are
// killed: they sit in the cemetery from their horizon on.
struct PathAtom {
  double time;
  TrajectorySegment path;
};

// Visits of a walk to B with refractory period tau:
//   T_1 = inf{t >= 0 : X_t in B},  T_k = inf{t > T_{k-1} + tau : X_t in B},
// where the infimum is attained, so T_k = T_{k-1} + tau when the walk is in B
// at that time. Each visit Y_k(t) = X_{T_k + t} for t < tau. Atoms are placed
// at T_k / a.
struct VisitingMeasure {
  std::vector<VertexId> target;
  double tau = 0.0;
  double a = 1.0;
  double horizon = 0.0;  // real-time horizon of the entrance times
  std::vector<PathAtom> atoms;
};

// Entrance times T_k <= path.horizon of a stored path.
std::vector<double> entrance_times(const TrajectorySegment& path, std::span<const VertexId> target, double tau);

// Visits extracted from a stored path; visits whose window runs past the end
// of the path are truncated there.
VisitingMeasure visiting_measure(const TrajectorySegment& path, std::span<const VertexId> target, double tau, double a);

// Simulates a walk from `start` (the equilibrium law when start == kCemetery)
// and extracts visits online, keeping only atoms with T_k <= horizon.
VisitingMeasure visiting_measure(const Generator& gen, std::span<const VertexId> target, double tau, double a,
                                 double horizon, RngStream& rng, VertexId start = kCemetery);

// Atoms with time <= sigma.
std::vector<PathAtom> restrict_atoms(const std::vector<PathAtom>& atoms, double sigma);
VisitingMeasure restrict(const VisitingMeasure& xi, double sigma);

// Paths truncated to [0, tau_kill).
TrajectorySegment kill_path(const TrajectorySegment& path, double tau_kill);
std::vector<PathAtom> kill_atoms(const std::vector<PathAtom>& atoms, double tau_kill);
VisitingMeasure kill_paths(const VisitingMeasure& xi, double tau_kill);

// Summary of atoms in [0, sigma] used for binned TV estimates: per atom the
// time bin (out of `bins` equal bins), entry vertex and the vertex skeleton of
// the first `skeleton_jumps` jumps, sorted. `relabel` maps vertices to labels.
using AtomSummary = std::vector<std::uint64_t>;
AtomSummary summarize(const std::vector<PathAtom>& atoms, double sigma, int bins, std::size_t skeleton_jumps,
                      const std::function<std::uint64_t(VertexId)>& relabel = {});

}  // namespace tracelab
