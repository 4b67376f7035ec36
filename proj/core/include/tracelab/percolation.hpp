#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <span>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/rng.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

enum class PercolationMode { Site, Bond };

PercolationMode parse_percolation_mode(const std::string& s);
std::string to_string(PercolationMode m);

// Base graph minus everything the walks saw on [0, time].
struct VacantGraph {
  const WeightedMultiGraph* base = nullptr;
  PercolationMode mode = PercolationMode::Site;
  std::vector<char> removed_vertex;
  std::vector<char> removed_edge;
  std::size_t removed = 0;
  double time = 0.0;

  bool vertex_vacant(VertexId v) const { return !removed_vertex[v]; }
  bool edge_open(EdgeId e) const;
};

// Time 0 counts as seen, so the starting site is removed even when time == 0.
VacantGraph vacant_graph(const WeightedMultiGraph& g, std::span<const TrajectorySegment> walks, double time,
                         PercolationMode mode);
// Runs `walks` independent walks from the stationary law up to `time`.
VacantGraph vacant_graph(const WeightedMultiGraph& g, double time, PercolationMode mode, RngStream& rng,
                         std::size_t walks = 1);

inline constexpr std::uint32_t kNoComponent = std::numeric_limits<std::uint32_t>::max();

struct ComponentStats {
  std::size_t num_vertices = 0;
  std::size_t vacant = 0;
  std::vector<std::size_t> sizes;  // descending
  std::vector<std::uint32_t> component_of;  // kNoComponent for removed sites
  std::size_t largest() const { return sizes.empty() ? 0 : sizes.front(); }
  // N^(k): share of all vertices lying in a vacant component of size >= k.
  double fraction_at_least(std::size_t k) const;
  // Ordered pairs (x, y) with both components of size >= k and x, y not connected.
  double disconnected_pairs(std::size_t k) const;
  double pair_disconnected(std::size_t k) const;
};

ComponentStats components(const VacantGraph& vg);

struct MaxSqBounds {
  double lower = 0.0;
  double max_sq = 0.0;
  double upper = 0.0;
};

// (sum)^2 - 3 sum_{i<j} a_i a_j <= max^2 <= (sum)^2 - 2 sum_{i<j} a_i a_j.
MaxSqBounds maxsq_bounds(std::span<const double> a);

// The inequality at component level with S = N^(k) |V| and exact ordered pair counts.
struct ComponentFormCheck {
  double s = 0.0;
  double ordered_pairs = 0.0;
  double cmax_sq = 0.0;
  double lower = 0.0;   // S^2 - 1.5 * ordered
  double upper = 0.0;   // S^2 - ordered
  bool upper_applicable = false;  // the largest component has size >= k
  bool holds = false;
};

ComponentFormCheck component_form_check(const ComponentStats& stats, std::size_t k);

using PercolationSampler = std::function<WeightedMultiGraph(RngStream&)>;

struct PairEstimate {
  double value = 0.0;
  double half_width = 0.0;
  std::size_t pairs = 0;
};

// MC estimate of P(|C(o)| >= k, |C(o')| >= k, o not in C(o')) for independent uniform o, o'.
// `time` is sigma * a; several pairs are drawn per sampled graph.
PairEstimate pair_condition_estimate(const PercolationSampler& sampler, double time, std::size_t k,
                                     std::size_t n_pairs, RngStream& rng,
                                     PercolationMode mode = PercolationMode::Site, std::size_t pairs_per_graph = 100);

struct PercolationRow {
  std::size_t replica = 0;
  std::size_t n = 0;
  std::size_t removed = 0;
  std::size_t cmax = 0;
  std::vector<double> n_k;
  double pair_estimate = 0.0;  // exact disconnected-pair share at the first k
  bool component_form_holds = true;
};

// One walk per replica for time sigma * a; a <= 0 means a = |V|.
std::vector<PercolationRow> giant_vs_survival_experiment(const PercolationSampler& sampler, double sigma, double a,
                                                         std::span<const std::size_t> k_list, std::size_t replicas,
                                                         PercolationMode mode, RngStream rng, int threads = 1);

}  // namespace tracelab
