#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/rng.hpp"
#include "tracelab/stats.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

using LocalVertex = std::uint32_t;
using LocalEdge = std::uint32_t;
inline constexpr LocalEdge kHalt = std::numeric_limits<LocalEdge>::max();

// A rooted generalized graph grown one revealed edge at a time, with its edge
// history. Vertex 0 is the root. Every edge of a disclosed vertex is present;
// edges whose far end is not yet disclosed end in the cemetery.
class Exploration {
 public:
  LocalVertex add_vertex(Label label, double alpha);
  LocalEdge add_edge(Label label, LocalVertex a, LocalVertex b, double beta);
  // Points the cemetery end of a dangling edge at v.
  void attach(LocalEdge e, LocalVertex v);
  // Joins dangling edges `keep` and `drop` into one edge between their
  // disclosed ends; `drop` disappears and `keep` takes label `label`.
  void merge(LocalEdge keep, LocalEdge drop, Label label);
  void record(LocalEdge e) { history_.push_back(e); }

  std::size_t num_vertices() const { return alpha_.size(); }
  std::size_t num_edges() const { return ends_.size(); }
  bool removed(LocalEdge e) const { return removed_[e]; }
  double alpha(LocalVertex v) const { return alpha_[v]; }
  Label vertex_label(LocalVertex v) const { return vertex_labels_[v]; }
  Label edge_label(LocalEdge e) const { return edge_labels_[e]; }
  double beta(LocalEdge e) const { return beta_[e]; }
  std::pair<LocalVertex, LocalVertex> endpoints(LocalEdge e) const { return ends_[e]; }
  bool dangling(LocalEdge e) const { return !removed_[e] && ends_[e].second == kCemetery; }
  LocalVertex other(LocalEdge e, LocalVertex v) const {
    return ends_[e].first == v ? ends_[e].second : ends_[e].first;
  }
  // Live incident edges; loops appear twice.
  const std::vector<LocalEdge>& incident(LocalVertex v) const { return incident_[v]; }
  std::size_t degree(LocalVertex v) const { return incident_[v].size(); }
  std::vector<LocalEdge> dangling_edges() const;
  bool has_dangling() const;
  // Hop distances from the root inside the exploration.
  std::vector<std::uint32_t> distances() const;
  const std::vector<LocalEdge>& history() const { return history_; }

  // Compacted generalized graph rooted at vertex 0. Vertex labels are kept
  // when `keep_labels` is set, otherwise local ids are used. `edge_index`
  // receives the compacted id of every local edge.
  RootedGraph to_rooted_graph(bool keep_labels = true, std::vector<EdgeId>* edge_index = nullptr) const;
  // History in compacted edge ids (kCemetery for a halt).
  std::vector<EdgeId> compacted_history() const;

 private:
  std::vector<double> alpha_;
  std::vector<Label> vertex_labels_;
  std::vector<std::vector<LocalEdge>> incident_;
  std::vector<std::pair<LocalVertex, LocalVertex>> ends_;
  std::vector<double> beta_;
  std::vector<Label> edge_labels_;
  std::vector<char> removed_;
  std::vector<LocalEdge> history_;
};

// Key that is equal for two explorations exactly when they are isomorphic
// with root fixed and histories matched elementwise. Every vertex other than
// the root is the new endpoint of some history edge, which fixes the vertex
// order; the remaining edges are compared as a multiset.
using ExplorationKey = std::vector<std::uint64_t>;
ExplorationKey canonical_key(const Exploration& x);

// Rule picking the next edge to reveal from what has been disclosed so far.
class ExplorationRule {
 public:
  virtual ~ExplorationRule() = default;
  // Proper rules reveal a dangling edge whenever one exists.
  virtual bool proper() const = 0;
  virtual void reset() {}
  virtual LocalEdge choose(const Exploration& x, RngStream& rng) = 0;
  virtual std::unique_ptr<ExplorationRule> clone() const = 0;
};

// Uniform over dangling edges whose disclosed end is closest to the root.
class BreadthFirstRule final : public ExplorationRule {
 public:
  bool proper() const override { return true; }
  LocalEdge choose(const Exploration& x, RngStream& rng) override;
  std::unique_ptr<ExplorationRule> clone() const override { return std::make_unique<BreadthFirstRule>(*this); }
};

// Reveals the edge by which a walk from the root first leaves the disclosed
// part. With a finite `restart` the walk is restarted at the root every
// `restart` time units; with `max_walks` the rule halts after that many walks.
class MarkovRule final : public ExplorationRule {
 public:
  explicit MarkovRule(double restart = std::numeric_limits<double>::infinity(), std::size_t max_walks = 0)
      : restart_(restart), max_walks_(max_walks) {}
  bool proper() const override { return max_walks_ == 0; }
  void reset() override;
  LocalEdge choose(const Exploration& x, RngStream& rng) override;
  std::unique_ptr<ExplorationRule> clone() const override { return std::make_unique<MarkovRule>(*this); }

  std::size_t walks_started() const { return walks_; }

 private:
  double restart_;
  std::size_t max_walks_;
  LocalVertex position_ = 0;
  double clock_ = 0.0;
  std::size_t walks_ = 0;
  bool started_ = false;
  LocalEdge pending_ = kHalt;
  LocalVertex pending_from_ = 0;
  bool halted_ = false;
};

// Runs `steps` steps of a rule on a rooted graph (first root).
Exploration explore(const RootedGraph& g, ExplorationRule& rule, std::size_t steps, RngStream& rng);

using GraphSampler = std::function<RootedGraph(RngStream&)>;

// Plug-in TV between exploration classes under two rooted-graph models.
TvEstimate exploration_tv_estimate(const GraphSampler& a, const GraphSampler& b, const ExplorationRule& rule,
                                   std::size_t steps, std::size_t samples, RngStream& rng);

struct ConditionedSample {
  std::vector<ExplorationKey> keys;
  std::size_t attempts = 0;
  double acceptance_rate() const { return attempts ? static_cast<double>(keys.size()) / attempts : 0.0; }
};

// Rejection sampling of explorations given #C(o) >= rho, read off a proper
// exploration of max(steps, rho - 1) steps.
ConditionedSample condition_on_component_size(const GraphSampler& sampler, std::size_t rho, const ExplorationRule& rule,
                                              std::size_t steps, std::size_t samples, RngStream& rng,
                                              double min_acceptance = 1e-3);

struct WalkDisclosure {
  WeightedMultiGraph disclosed;
  std::vector<TrajectorySegment> walks;
};

// m walks from the first root on [0, 2 tau] and the subgraph they disclose.
WalkDisclosure disclosed_by_walks(const RootedGraph& g, std::size_t m, double tau, RngStream& rng);

// Coupled exploration of a configuration model and a Galton-Watson tree. Both
// are built lazily from the degree sequence; see coupled_exploration.cpp.
struct CoupledResult {
  enum class Failure { None, Collision, Cycle, DegreeMax };
  Exploration tree;
  Exploration graph;
  bool in_sync = true;  // identical at every step
  bool isomorphic = false;
  bool cycle = false;
  bool degree_exceeded = false;
  std::size_t max_degree = 0;
  bool success = false;
  Failure failure = Failure::None;
};

CoupledResult coupled_exploration(std::span<const std::size_t> degrees, VertexId root, const ExplorationRule& rule,
                                  std::size_t steps, RngStream& rng);

const char* to_string(CoupledResult::Failure f);

}  // namespace tracelab
