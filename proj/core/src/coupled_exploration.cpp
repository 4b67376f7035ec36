// Joint construction of a configuration-model exploration and a
// Galton-Watson tree exploration from one degree sequence. The tree side
// pairs every revealed half-edge with a uniform half-edge h''; the graph side
// reuses h'' unless it is already paired, in which case it redraws among the
// unpaired half-edges. A graph-side draw that lands on a dangling half-edge
// of an already disclosed vertex closes a cycle (the two edges merge). After
// the last step the dangling half-edges of the graph side are paired lazily
// to detect edges hidden between disclosed vertices.
#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "tracelab/error.hpp"
#include "tracelab/exploration.hpp"

namespace tracelab {

namespace {

class HalfEdges {
 public:
  explicit HalfEdges(std::span<const std::size_t> degrees) : offsets_(degrees.size() + 1, 0) {
    for (std::size_t v = 0; v < degrees.size(); ++v) offsets_[v + 1] = offsets_[v] + degrees[v];
  }
  std::uint64_t total() const { return offsets_.back(); }
  VertexId owner(std::uint64_t h) const {
    return static_cast<VertexId>(std::upper_bound(offsets_.begin(), offsets_.end(), h) - offsets_.begin() - 1);
  }
  std::uint64_t first(VertexId v) const { return offsets_[v]; }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

 private:
  std::vector<std::uint64_t> offsets_;
};

double weight_of(std::size_t degree) { return degree > 0 ? static_cast<double>(degree) : 1.0; }

// Adds vertex v with dangling edges for all its half-edges except `skip`;
// returns the local vertex.
LocalVertex add_with_half_edges(Exploration& x, const HalfEdges& h, VertexId v, std::uint64_t skip,
                                std::unordered_map<std::uint64_t, LocalEdge>* dangling_index) {
  const LocalVertex lv = x.add_vertex(v, weight_of(h.degree(v)));
  for (std::uint64_t i = h.first(v); i < h.first(v) + h.degree(v); ++i) {
    if (i == skip) continue;
    const LocalEdge e = x.add_edge(i, lv, kCemetery, 1.0);
    if (dangling_index) (*dangling_index)[i] = e;
  }
  return lv;
}

class PairedSet {
 public:
  bool contains(std::uint64_t h) const { return set_.count(h) > 0; }
  void insert(std::uint64_t h) { set_.emplace(h, 1); }
  std::size_t size() const { return set_.size(); }

 private:
  std::unordered_map<std::uint64_t, char> set_;
};

// Uniform half-edge outside `paired` (and different from `also`).
std::uint64_t draw_unpaired(const HalfEdges& h, const PairedSet& paired, RngStream& rng,
                            std::uint64_t also = ~std::uint64_t{0}) {
  const std::uint64_t n = h.total();
  for (int attempt = 0; attempt < 256; ++attempt) {
    const std::uint64_t c = rng.below(n);
    if (!paired.contains(c) && c != also) return c;
  }
  std::vector<std::uint64_t> pool;
  for (std::uint64_t c = 0; c < n; ++c)
    if (!paired.contains(c) && c != also) pool.push_back(c);
  if (pool.empty()) fail(ErrorCode::InvalidArgument, "no unpaired half-edge left");
  return pool[rng.below(pool.size())];
}

}  // namespace

CoupledResult coupled_exploration(std::span<const std::size_t> degrees, VertexId root, const ExplorationRule& rule,
                                  std::size_t steps, RngStream& rng) {
  if (root >= degrees.size()) fail(ErrorCode::NotAVertex, "root " + std::to_string(root));
  const HalfEdges h(degrees);
  if (h.total() % 2) fail(ErrorCode::OddDegreeSum, "degree sum " + std::to_string(h.total()));
  if (h.total() == 0) fail(ErrorCode::InvalidArgument, "no half-edges");

  CoupledResult r;
  std::unordered_map<std::uint64_t, LocalEdge> graph_dangling;
  add_with_half_edges(r.tree, h, root, ~std::uint64_t{0}, nullptr);
  add_with_half_edges(r.graph, h, root, ~std::uint64_t{0}, &graph_dangling);
  std::unordered_map<std::uint64_t, LocalVertex> graph_vertex{{root, 0}};
  PairedSet paired;

  auto tree_rule = rule.clone();
  tree_rule->reset();
  std::unique_ptr<ExplorationRule> graph_rule;
  RngStream tree_rng = rng.split(0);
  RngStream graph_rng = rng.split(1);
  RngStream draw_rng = rng.split(2);

  for (std::size_t k = 0; k < steps; ++k) {
    const LocalEdge t_edge = tree_rule->choose(r.tree, tree_rng);
    std::uint64_t h_tree = ~std::uint64_t{0};
    if (t_edge != kHalt && r.tree.dangling(t_edge)) {
      h_tree = draw_rng.below(h.total());
      const VertexId v = h.owner(h_tree);
      const LocalVertex lv = add_with_half_edges(r.tree, h, v, h_tree, nullptr);
      r.tree.attach(t_edge, lv);
    }
    r.tree.record(t_edge);

    const LocalEdge g_edge = r.in_sync ? t_edge : graph_rule->choose(r.graph, graph_rng);
    bool same = r.in_sync;
    if (g_edge != kHalt && r.graph.dangling(g_edge)) {
      const std::uint64_t h_prime = r.graph.edge_label(g_edge);
      paired.insert(h_prime);
      graph_dangling.erase(h_prime);
      std::uint64_t h_graph;
      if (r.in_sync && !paired.contains(h_tree)) {
        h_graph = h_tree;
      } else {
        h_graph = draw_unpaired(h, paired, draw_rng);
        same = false;
      }
      paired.insert(h_graph);
      const auto dangling_it = graph_dangling.find(h_graph);
      if (dangling_it != graph_dangling.end()) {
        const LocalEdge drop = dangling_it->second;
        graph_dangling.erase(dangling_it);
        const Label label = draw_rng.bernoulli(0.5) ? h_prime : h_graph;
        r.graph.merge(g_edge, drop, label);
        same = false;
      } else {
        const VertexId v = h.owner(h_graph);
        const LocalVertex lv = add_with_half_edges(r.graph, h, v, h_graph, &graph_dangling);
        graph_vertex.emplace(v, lv);
        r.graph.attach(g_edge, lv);
      }
    }
    r.graph.record(g_edge);
    if (r.in_sync && !same) {
      r.in_sync = false;
      graph_rule = tree_rule->clone();
    }
  }

  for (LocalVertex v = 0; v < r.graph.num_vertices(); ++v) r.max_degree = std::max(r.max_degree, r.graph.degree(v));
  const auto cap = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(degrees.size()))));
  r.degree_exceeded = r.max_degree >= cap;

  // Lazy completion of the pairing for the graph side's dangling half-edges.
  std::vector<std::uint64_t> open;
  for (const auto& [half, e] : graph_dangling) open.push_back(half);
  std::sort(open.begin(), open.end());
  for (std::uint64_t half : open) {
    if (paired.contains(half)) continue;
    paired.insert(half);
    const std::uint64_t partner = draw_unpaired(h, paired, draw_rng);
    paired.insert(partner);
    if (graph_dangling.count(partner)) {
      r.cycle = true;
      break;
    }
  }

  r.isomorphic = canonical_key(r.tree) == canonical_key(r.graph);
  r.success = r.isomorphic && !r.cycle && !r.degree_exceeded;
  if (r.degree_exceeded)
    r.failure = CoupledResult::Failure::DegreeMax;
  else if (!r.isomorphic)
    r.failure = CoupledResult::Failure::Collision;
  else if (r.cycle)
    r.failure = CoupledResult::Failure::Cycle;
  return r;
}

}  // namespace tracelab
