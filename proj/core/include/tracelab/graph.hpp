#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tracelab {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::uint64_t;

// Sentinel endpoint: the cemetery vertex of a generalized graph.
inline constexpr VertexId kCemetery = std::numeric_limits<VertexId>::max();
inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

struct Endpoint {
  bool is_cemetery = false;
  Label label = 0;
  static Endpoint cemetery() { return {true, 0}; }
  static Endpoint vertex(Label l) { return {false, l}; }
};

struct VertexSpec {
  Label label;
  double alpha;
};

struct EdgeSpec {
  Label label;
  Endpoint u;
  Endpoint v;
  double beta;
};

// Finite multigraph with vertex weights alpha and edge weights beta. Loops and
// parallel edges are allowed. In a generalized graph an edge may have the
// cemetery as one endpoint. Vertices and edges carry dense ids plus the labels
// they were built from.
class WeightedMultiGraph {
 public:
  WeightedMultiGraph() = default;

  // Dense construction. ends[e].second may be kCemetery (never .first).
  WeightedMultiGraph(std::vector<double> alpha, std::vector<std::pair<VertexId, VertexId>> ends,
                     std::vector<double> beta, bool generalized = false,
                     std::vector<Label> vertex_labels = {}, std::vector<Label> edge_labels = {});

  std::size_t num_vertices() const { return alpha_.size(); }
  std::size_t num_edges() const { return ends_.size(); }
  bool generalized() const { return generalized_; }

  double alpha(VertexId v) const { return alpha_[v]; }
  double beta(EdgeId e) const { return beta_[e]; }
  const std::vector<double>& alphas() const { return alpha_; }
  const std::vector<double>& betas() const { return beta_; }
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return ends_[e]; }
  bool is_loop(EdgeId e) const { return ends_[e].first == ends_[e].second; }
  bool is_cemetery_edge(EdgeId e) const { return ends_[e].second == kCemetery; }
  // Other endpoint seen from v (v itself for a loop, kCemetery for a dangling edge).
  VertexId other(EdgeId e, VertexId v) const {
    return ends_[e].first == v ? ends_[e].second : ends_[e].first;
  }

  // Incident edges of v; loops appear twice.
  std::span<const EdgeId> incident(VertexId v) const {
    return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  Label vertex_label(VertexId v) const { return vertex_labels_[v]; }
  Label edge_label(EdgeId e) const { return edge_labels_[e]; }
  std::optional<VertexId> find_vertex(Label label) const;
  std::optional<EdgeId> find_edge(Label label) const;

  double total_alpha() const;

 private:
  std::vector<double> alpha_;
  std::vector<std::pair<VertexId, VertexId>> ends_;
  std::vector<double> beta_;
  std::vector<Label> vertex_labels_;
  std::vector<Label> edge_labels_;
  std::vector<std::size_t> offsets_;
  std::vector<EdgeId> incidence_;
  bool generalized_ = false;
};

struct RootedGraph {
  WeightedMultiGraph graph;
  std::vector<VertexId> roots;
};

// Builds a graph from labelled specs; dense ids follow ascending label order.
WeightedMultiGraph build_graph(const std::vector<VertexSpec>& vertices, const std::vector<EdgeSpec>& edges,
                               bool generalized = false);

// Checks roots are present, nonempty and in range.
void validate_roots(const RootedGraph& g);

// Hop distances from a source set (loops and cemetery edges ignored).
std::vector<std::uint32_t> hop_distances(const WeightedMultiGraph& g, std::span<const VertexId> sources);

// Vertices within hop distance R of the roots, ascending.
std::vector<VertexId> ball(const RootedGraph& g, std::uint32_t radius);
// Vertices at hop distance exactly R, ascending.
std::vector<VertexId> boundary(const RootedGraph& g, std::uint32_t radius);

double total_vertex_weight(const WeightedMultiGraph& g, std::span<const VertexId> set);

// Generalized graph on `set`: every edge with an endpoint in `set` is kept and
// endpoints outside are redirected to the cemetery. Labels are inherited.
WeightedMultiGraph disclosed_subgraph(const WeightedMultiGraph& g, std::span<const VertexId> set);

// Subgraph on `set` keeping only edges with both endpoints in `set`.
WeightedMultiGraph induced_subgraph(const WeightedMultiGraph& g, std::span<const VertexId> set);

// Membership mask for a vertex set.
std::vector<char> indicator(std::size_t n, std::span<const VertexId> set);

}  // namespace tracelab
