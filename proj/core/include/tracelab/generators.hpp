#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/rng.hpp"

namespace tracelab {

// Law of a nonnegative integer: probs[k] = P(D = k).
class DegreeDistribution {
 public:
  explicit DegreeDistribution(std::vector<double> probs);

  static DegreeDistribution regular(std::size_t d);
  // Poisson(mean) truncated at kmax and renormalized.
  static DegreeDistribution poisson(double mean, std::size_t kmax);

  const std::vector<double>& probs() const { return probs_; }
  double mean() const;
  double pgf(double s) const;
  std::size_t sample(RngStream& rng) const;

 private:
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

// Size-biased law k p_k / E[D].
DegreeDistribution size_bias(const DegreeDistribution& d);

// n i.i.d. draws; the last entry is incremented when the sum is odd.
std::vector<std::size_t> sample_degree_sequence(const DegreeDistribution& d, std::size_t n, RngStream& rng);

// Configuration model: shuffle the half-edges and pair them consecutively.
// alpha = degree (1 for isolated vertices), beta = 1. Edge e pairs the
// half-edges at shuffled positions 2e and 2e+1.
WeightedMultiGraph pair_half_edges(std::span<const std::size_t> degrees, RngStream& rng);

WeightedMultiGraph configuration_model(const DegreeDistribution& d, std::size_t n, RngStream& rng);

// Uniform graph with n vertices and min(m, n(n-1)/2) edges.
WeightedMultiGraph erdos_renyi_gnm(std::size_t n, std::uint64_t m, RngStream& rng);

struct GwpTreeOptions {
  std::uint32_t max_depth = 40;
  std::size_t max_vertices = 100000;
};

// Galton-Watson tree: the root has D children, every other vertex D* - 1.
// alpha(v) is the sampled degree of v (children plus parent, 1 if that is 0),
// also for vertices whose children were cut off by truncation.
struct GwpTree {
  RootedGraph tree;
  std::vector<std::uint32_t> depth;
  std::vector<std::uint32_t> children;  // sampled child counts
  bool truncated = false;
};

GwpTree sample_gwp_tree(const DegreeDistribution& d, const DegreeDistribution& d_star, RngStream& rng,
                        const GwpTreeOptions& options = {});

// Connected components (loops and cemetery edges ignored), as vertex lists.
std::vector<std::vector<VertexId>> connected_components(const WeightedMultiGraph& g);

// Largest component, ties broken uniformly, rooted at a uniform vertex.
RootedGraph largest_component(const WeightedMultiGraph& g, RngStream& rng);

struct SurvivalResult {
  double extinction = 1.0;  // least fixed point q of q = E[q^{D*-1}]
  double survival = 0.0;    // 1 - E[q^D]
  std::size_t iterations = 0;
};

SurvivalResult gw_survival(const DegreeDistribution& d, const DegreeDistribution& d_star);

// l = floor(n^{0.9 min((tau-2)/tau, 1/2)}), tau_n = (log n)^2,
// l' = ceil(sqrt l), m = ceil(l / l'), a = n.
struct EllSchedule {
  std::size_t ell = 0;
  std::size_t ell_prime = 0;
  std::size_t m = 0;
  double tau_n = 0.0;
  double a_n = 0.0;
  double exponent = 0.0;
};

EllSchedule ell_schedule(double tau_exponent, std::size_t n);

// Whether min degree >= 3 and max degree <= n^{0.02} hold for a sequence.
bool degree_sequence_regular_enough(std::span<const std::size_t> degrees);

}  // namespace tracelab
