#include "tracelab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "tracelab/error.hpp"

namespace tracelab {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

std::vector<std::pair<Label, std::uint32_t>> sorted_index(const std::vector<Label>& labels) {
  std::vector<std::pair<Label, std::uint32_t>> idx(labels.size());
  for (std::uint32_t i = 0; i < labels.size(); ++i) idx[i] = {labels[i], i};
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::optional<std::uint32_t> lookup(const std::vector<Label>& labels, Label label) {
  // Identity labelling is the common case.
  if (label < labels.size() && labels[label] == label) return static_cast<std::uint32_t>(label);
  for (std::uint32_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  return std::nullopt;
}

}  // namespace

WeightedMultiGraph::WeightedMultiGraph(std::vector<double> alpha, std::vector<std::pair<VertexId, VertexId>> ends,
                                       std::vector<double> beta, bool generalized,
                                       std::vector<Label> vertex_labels, std::vector<Label> edge_labels)
    : alpha_(std::move(alpha)),
      ends_(std::move(ends)),
      beta_(std::move(beta)),
      vertex_labels_(std::move(vertex_labels)),
      edge_labels_(std::move(edge_labels)),
      generalized_(generalized) {
  const std::size_t n = alpha_.size();
  if (beta_.size() != ends_.size()) fail(ErrorCode::InvalidArgument, "beta/endpoint size mismatch");
  for (std::size_t v = 0; v < n; ++v)
    if (!positive_finite(alpha_[v])) fail(ErrorCode::NonpositiveWeight, "alpha of vertex " + std::to_string(v));
  for (std::size_t e = 0; e < ends_.size(); ++e) {
    if (!positive_finite(beta_[e])) fail(ErrorCode::NonpositiveWeight, "beta of edge " + std::to_string(e));
    auto& [a, b] = ends_[e];
    if (a == kCemetery) std::swap(a, b);
    if (a == kCemetery) fail(ErrorCode::BothEndpointsCemetery, "edge " + std::to_string(e) + " has no vertex endpoint");
    if (b == kCemetery && !generalized_)
      fail(ErrorCode::CemeteryInStandardGraph, "edge " + std::to_string(e));
    if (a >= n || (b != kCemetery && b >= n))
      fail(ErrorCode::BothEndpointsCemetery, "edge " + std::to_string(e) + " endpoint out of range");
  }
  if (vertex_labels_.empty()) {
    vertex_labels_.resize(n);
    std::iota(vertex_labels_.begin(), vertex_labels_.end(), Label{0});
  } else if (vertex_labels_.size() != n) {
    fail(ErrorCode::InvalidArgument, "vertex label count mismatch");
  } else {
    const auto idx = sorted_index(vertex_labels_);
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (idx[i].first == idx[i - 1].first) fail(ErrorCode::DuplicateLabel, "vertex label " + std::to_string(idx[i].first));
  }
  if (edge_labels_.empty()) {
    edge_labels_.resize(ends_.size());
    std::iota(edge_labels_.begin(), edge_labels_.end(), Label{0});
  } else if (edge_labels_.size() != ends_.size()) {
    fail(ErrorCode::InvalidArgument, "edge label count mismatch");
  } else {
    const auto idx = sorted_index(edge_labels_);
    for (std::size_t i = 1; i < idx.size(); ++i)
      if (idx[i].first == idx[i - 1].first) fail(ErrorCode::DuplicateLabel, "edge label " + std::to_string(idx[i].first));
  }

  offsets_.assign(n + 1, 0);
  for (const auto& [a, b] : ends_) {
    ++offsets_[a + 1];
    if (b != kCemetery) ++offsets_[b + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  incidence_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < ends_.size(); ++e) {
    const auto [a, b] = ends_[e];
    incidence_[fill[a]++] = e;
    if (b != kCemetery) incidence_[fill[b]++] = e;
  }
}

std::optional<VertexId> WeightedMultiGraph::find_vertex(Label label) const { return lookup(vertex_labels_, label); }

std::optional<EdgeId> WeightedMultiGraph::find_edge(Label label) const { return lookup(edge_labels_, label); }

double WeightedMultiGraph::total_alpha() const {
  double s = 0.0;
  for (double a : alpha_) s += a;
  return s;
}

WeightedMultiGraph build_graph(const std::vector<VertexSpec>& vertices, const std::vector<EdgeSpec>& edges,
                               bool generalized) {
  std::vector<VertexSpec> vs = vertices;
  std::sort(vs.begin(), vs.end(), [](const VertexSpec& a, const VertexSpec& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (vs[i].label == vs[i - 1].label) fail(ErrorCode::DuplicateLabel, "vertex label " + std::to_string(vs[i].label));
  std::vector<EdgeSpec> es = edges;
  std::sort(es.begin(), es.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < es.size(); ++i)
    if (es[i].label == es[i - 1].label) fail(ErrorCode::DuplicateLabel, "edge label " + std::to_string(es[i].label));

  auto resolve = [&](const Endpoint& p, Label edge) -> VertexId {
    if (p.is_cemetery) {
      if (!generalized) fail(ErrorCode::CemeteryInStandardGraph, "edge " + std::to_string(edge));
      return kCemetery;
    }
    auto it = std::lower_bound(vs.begin(), vs.end(), p.label,
                               [](const VertexSpec& s, Label l) { return s.label < l; });
    if (it == vs.end() || it->label != p.label)
      fail(ErrorCode::NotAVertex, "edge " + std::to_string(edge) + " references unknown vertex " +
                                     std::to_string(p.label));
    return static_cast<VertexId>(it - vs.begin());
  };

  std::vector<double> alpha;
  std::vector<Label> vlabels;
  for (const auto& v : vs) {
    alpha.push_back(v.alpha);
    vlabels.push_back(v.label);
  }
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<double> beta;
  std::vector<Label> elabels;
  for (const auto& e : es) {
    const VertexId a = resolve(e.u, e.label);
    const VertexId b = resolve(e.v, e.label);
    if (a == kCemetery && b == kCemetery)
      fail(ErrorCode::BothEndpointsCemetery, "edge " + std::to_string(e.label) + " joins the cemetery to itself");
    ends.emplace_back(a, b);
    beta.push_back(e.beta);
    elabels.push_back(e.label);
  }
  return WeightedMultiGraph(std::move(alpha), std::move(ends), std::move(beta), generalized, std::move(vlabels),
                            std::move(elabels));
}

void validate_roots(const RootedGraph& g) {
  if (g.roots.empty()) fail(ErrorCode::EmptyRootSet, "rooted graph without roots");
  for (VertexId r : g.roots)
    if (r >= g.graph.num_vertices()) fail(ErrorCode::NotAVertex, "root " + std::to_string(r));
}

std::vector<std::uint32_t> hop_distances(const WeightedMultiGraph& g, std::span<const VertexId> sources) {
  std::vector<std::uint32_t> dist(g.num_vertices(), kUnreached);
  std::deque<VertexId> queue;
  for (VertexId s : sources) {
    if (s >= g.num_vertices()) fail(ErrorCode::NotAVertex, "source " + std::to_string(s));
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.incident(v)) {
      const VertexId w = g.other(e, v);
      if (w == kCemetery || dist[w] != kUnreached) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::vector<VertexId> ball(const RootedGraph& g, std::uint32_t radius) {
  validate_roots(g);
  const auto dist = hop_distances(g.graph, g.roots);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < dist.size(); ++v)
    if (dist[v] <= radius) out.push_back(v);
  return out;
}

std::vector<VertexId> boundary(const RootedGraph& g, std::uint32_t radius) {
  validate_roots(g);
  const auto dist = hop_distances(g.graph, g.roots);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < dist.size(); ++v)
    if (dist[v] == radius) out.push_back(v);
  return out;
}

double total_vertex_weight(const WeightedMultiGraph& g, std::span<const VertexId> set) {
  double s = 0.0;
  for (VertexId v : set) {
    if (v >= g.num_vertices()) fail(ErrorCode::NotAVertex, "vertex " + std::to_string(v));
    s += g.alpha(v);
  }
  return s;
}

std::vector<char> indicator(std::size_t n, std::span<const VertexId> set) {
  std::vector<char> in(n, 0);
  for (VertexId v : set) {
    if (v >= n) fail(ErrorCode::NotAVertex, "vertex " + std::to_string(v));
    in[v] = 1;
  }
  return in;
}

namespace {

WeightedMultiGraph subgraph(const WeightedMultiGraph& g, std::span<const VertexId> set, bool disclosed) {
  std::vector<VertexId> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<VertexId> local(g.num_vertices(), kCemetery);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] >= g.num_vertices()) fail(ErrorCode::NotAVertex, "vertex " + std::to_string(sorted[i]));
    local[sorted[i]] = static_cast<VertexId>(i);
  }
  std::vector<double> alpha;
  std::vector<Label> vlabels;
  for (VertexId v : sorted) {
    alpha.push_back(g.alpha(v));
    vlabels.push_back(g.vertex_label(v));
  }
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<double> beta;
  std::vector<Label> elabels;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.endpoints(e);
    const VertexId la = local[a];
    const VertexId lb = b == kCemetery ? kCemetery : local[b];
    if (la == kCemetery && lb == kCemetery) continue;
    if (!disclosed && (la == kCemetery || lb == kCemetery)) continue;
    ends.emplace_back(la == kCemetery ? lb : la, la == kCemetery ? kCemetery : lb);
    beta.push_back(g.beta(e));
    elabels.push_back(g.edge_label(e));
  }
  return WeightedMultiGraph(std::move(alpha), std::move(ends), std::move(beta), disclosed || g.generalized(),
                            std::move(vlabels), std::move(elabels));
}

}  // namespace

WeightedMultiGraph disclosed_subgraph(const WeightedMultiGraph& g, std::span<const VertexId> set) {
  return subgraph(g, set, true);
}

WeightedMultiGraph induced_subgraph(const WeightedMultiGraph& g, std::span<const VertexId> set) {
  return subgraph(g, set, false);
}

}  // namespace tracelab
