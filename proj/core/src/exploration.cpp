#include "tracelab/exploration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_map>

#include "tracelab/error.hpp"

namespace tracelab {

LocalVertex Exploration::add_vertex(Label label, double alpha) {
  alpha_.push_back(alpha);
  vertex_labels_.push_back(label);
  incident_.emplace_back();
  return static_cast<LocalVertex>(alpha_.size() - 1);
}

LocalEdge Exploration::add_edge(Label label, LocalVertex a, LocalVertex b, double beta) {
  const auto e = static_cast<LocalEdge>(ends_.size());
  ends_.emplace_back(a, b);
  beta_.push_back(beta);
  edge_labels_.push_back(label);
  removed_.push_back(0);
  incident_[a].push_back(e);
  if (b != kCemetery) incident_[b].push_back(e);
  return e;
}

void Exploration::attach(LocalEdge e, LocalVertex v) {
  if (!dangling(e)) fail(ErrorCode::InvalidArgument, "attach needs a dangling edge");
  ends_[e].second = v;
  incident_[v].push_back(e);
}

void Exploration::merge(LocalEdge keep, LocalEdge drop, Label label) {
  if (!dangling(keep) || !dangling(drop) || keep == drop) fail(ErrorCode::InvalidArgument, "merge needs two dangling edges");
  const LocalVertex w = ends_[drop].first;
  auto& inc = incident_[w];
  inc.erase(std::find(inc.begin(), inc.end(), drop));
  removed_[drop] = 1;
  ends_[keep].second = w;
  inc.push_back(keep);
  edge_labels_[keep] = label;
}

std::vector<LocalEdge> Exploration::dangling_edges() const {
  std::vector<LocalEdge> out;
  for (LocalEdge e = 0; e < ends_.size(); ++e)
    if (dangling(e)) out.push_back(e);
  return out;
}

bool Exploration::has_dangling() const {
  for (LocalEdge e = 0; e < ends_.size(); ++e)
    if (dangling(e)) return true;
  return false;
}

std::vector<std::uint32_t> Exploration::distances() const {
  std::vector<std::uint32_t> dist(alpha_.size(), kUnreached);
  if (alpha_.empty()) return dist;
  std::deque<LocalVertex> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    const LocalVertex v = queue.front();
    queue.pop_front();
    for (LocalEdge e : incident_[v]) {
      const LocalVertex w = other(e, v);
      if (w == kCemetery || dist[w] != kUnreached) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

RootedGraph Exploration::to_rooted_graph(bool keep_labels, std::vector<EdgeId>* edge_index) const {
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<double> beta;
  std::vector<Label> elabels;
  std::vector<EdgeId> index(ends_.size(), kCemetery);
  for (LocalEdge e = 0; e < ends_.size(); ++e) {
    if (removed_[e]) continue;
    index[e] = static_cast<EdgeId>(ends.size());
    ends.push_back(ends_[e]);
    beta.push_back(beta_[e]);
    elabels.push_back(keep_labels ? edge_labels_[e] : e);
  }
  std::vector<Label> vlabels;
  if (keep_labels) vlabels = vertex_labels_;
  RootedGraph out;
  out.graph = WeightedMultiGraph(alpha_, std::move(ends), std::move(beta), true, std::move(vlabels),
                                 keep_labels ? std::move(elabels) : std::vector<Label>{});
  out.roots = {0};
  if (edge_index) *edge_index = std::move(index);
  return out;
}

std::vector<EdgeId> Exploration::compacted_history() const {
  std::vector<EdgeId> index(ends_.size(), kCemetery);
  EdgeId next = 0;
  for (LocalEdge e = 0; e < ends_.size(); ++e)
    if (!removed_[e]) index[e] = next++;
  std::vector<EdgeId> out;
  for (LocalEdge e : history_) out.push_back(e == kHalt ? kCemetery : index[e]);
  return out;
}

ExplorationKey canonical_key(const Exploration& x) {
  const std::size_t n = x.num_vertices();
  constexpr std::uint64_t kOut = ~std::uint64_t{0};
  std::vector<std::uint64_t> order(n, kOut);
  std::uint64_t next = 0;
  auto place = [&](LocalVertex v) {
    if (v != kCemetery && order[v] == kOut) order[v] = next++;
  };
  if (n > 0) place(0);
  for (LocalEdge e : x.history()) {
    if (e == kHalt) continue;
    place(x.endpoints(e).first);
    place(x.endpoints(e).second);
  }
  for (LocalVertex v = 0; v < n; ++v) place(v);
  auto canon = [&](LocalVertex v) { return v == kCemetery ? kOut : order[v]; };

  ExplorationKey key;
  key.push_back(n);
  std::vector<std::uint64_t> alpha_by_order(n);
  for (LocalVertex v = 0; v < n; ++v) alpha_by_order[order[v]] = std::bit_cast<std::uint64_t>(x.alpha(v));
  key.insert(key.end(), alpha_by_order.begin(), alpha_by_order.end());

  key.push_back(x.history().size());
  std::unordered_map<LocalEdge, std::uint64_t> first_seen;
  for (std::size_t i = 0; i < x.history().size(); ++i) {
    const LocalEdge e = x.history()[i];
    if (e == kHalt) {
      key.insert(key.end(), {kOut, kOut, kOut, kOut});
      continue;
    }
    auto [a, b] = x.endpoints(e);
    std::uint64_t ca = canon(a), cb = canon(b);
    if (ca > cb) std::swap(ca, cb);
    const auto [it, fresh] = first_seen.emplace(e, i);
    key.insert(key.end(), {ca, cb, std::bit_cast<std::uint64_t>(x.beta(e)), it->second});
  }

  std::vector<std::array<std::uint64_t, 3>> edges;
  for (LocalEdge e = 0; e < x.num_edges(); ++e) {
    if (x.removed(e)) continue;
    auto [a, b] = x.endpoints(e);
    std::uint64_t ca = canon(a), cb = canon(b);
    if (ca > cb) std::swap(ca, cb);
    edges.push_back({ca, cb, std::bit_cast<std::uint64_t>(x.beta(e))});
  }
  std::sort(edges.begin(), edges.end());
  key.push_back(edges.size());
  for (const auto& e : edges) key.insert(key.end(), e.begin(), e.end());
  return key;
}

LocalEdge BreadthFirstRule::choose(const Exploration& x, RngStream& rng) {
  const auto dangling = x.dangling_edges();
  if (dangling.empty()) return kHalt;
  const auto dist = x.distances();
  std::uint32_t best = kUnreached;
  for (LocalEdge e : dangling) best = std::min(best, dist[x.endpoints(e).first]);
  std::vector<LocalEdge> closest;
  for (LocalEdge e : dangling)
    if (dist[x.endpoints(e).first] == best) closest.push_back(e);
  return closest[rng.below(closest.size())];
}

void MarkovRule::reset() {
  position_ = 0;
  clock_ = 0.0;
  walks_ = 0;
  started_ = false;
  pending_ = kHalt;
  halted_ = false;
}

LocalEdge MarkovRule::choose(const Exploration& x, RngStream& rng) {
  if (halted_) return kHalt;
  if (!started_) {
    started_ = true;
    position_ = 0;
    clock_ = 0.0;
    walks_ = 1;
  }
  if (pending_ != kHalt) {
    position_ = x.other(pending_, pending_from_);
    pending_ = kHalt;
  }
  if (!x.has_dangling()) return kHalt;
  auto end_walk = [&]() {
    if (max_walks_ > 0 && walks_ >= max_walks_) {
      halted_ = true;
      return false;
    }
    ++walks_;
    position_ = 0;
    clock_ = 0.0;
    return true;
  };
  for (std::uint64_t iter = 0; iter < 100000000ull; ++iter) {
    if (position_ == kCemetery) {
      if (!end_walk()) return kHalt;
      continue;
    }
    double rate = 0.0;
    for (LocalEdge e : x.incident(position_))
      if (x.endpoints(e).first != x.endpoints(e).second) rate += x.beta(e);
    rate /= x.alpha(position_);
    if (rate == 0.0) {
      if (!std::isfinite(restart_)) return kHalt;
      if (!end_walk()) return kHalt;
      continue;
    }
    const double hold = rng.exponential(rate);
    if (clock_ + hold > restart_) {
      if (!end_walk()) return kHalt;
      continue;
    }
    clock_ += hold;
    double u = rng.uniform() * rate * x.alpha(position_);
    LocalEdge chosen = kHalt;
    for (LocalEdge e : x.incident(position_)) {
      if (x.endpoints(e).first == x.endpoints(e).second) continue;
      chosen = e;
      u -= x.beta(e);
      if (u < 0.0) break;
    }
    if (x.dangling(chosen)) {
      pending_ = chosen;
      pending_from_ = position_;
      return chosen;
    }
    position_ = x.other(chosen, position_);
  }
  fail(ErrorCode::NonConvergence, "walk did not leave the disclosed part");
}

namespace {

// Incrementally maintained exploration of a concrete rooted graph.
class GraphExplorer {
 public:
  explicit GraphExplorer(const RootedGraph& g) : g_(g.graph) {
    validate_roots(g);
    local_vertex_.assign(g_.num_vertices(), kCemetery);
    local_edge_.assign(g_.num_edges(), kHalt);
    disclose(g.roots.front());
  }

  void step(ExplorationRule& rule, RngStream& rng) {
    const LocalEdge e = rule.choose(x_, rng);
    if (e != kHalt && x_.dangling(e)) {
      const auto [a, b] = g_.endpoints(global_edge_[e]);
      const VertexId w = local_vertex_[a] == kCemetery ? a : b;
      if (w != kCemetery && local_vertex_[w] == kCemetery) disclose(w);
    }
    x_.record(e);
  }

  const Exploration& exploration() const { return x_; }
  Exploration take() { return std::move(x_); }

 private:
  void disclose(VertexId w) {
    const LocalVertex lw = x_.add_vertex(g_.vertex_label(w), g_.alpha(w));
    local_vertex_[w] = lw;
    for (EdgeId f : g_.incident(w)) {
      const LocalEdge known = local_edge_[f];
      if (known != kHalt) {
        if (x_.dangling(known) && !g_.is_cemetery_edge(f)) x_.attach(known, lw);
        continue;
      }
      const LocalEdge lf = x_.add_edge(g_.edge_label(f), lw, g_.is_loop(f) ? lw : kCemetery, g_.beta(f));
      local_edge_[f] = lf;
      global_edge_.push_back(f);
    }
  }

  const WeightedMultiGraph& g_;
  Exploration x_;
  std::vector<LocalVertex> local_vertex_;
  std::vector<LocalEdge> local_edge_;
  std::vector<EdgeId> global_edge_;
};

}  // namespace

Exploration explore(const RootedGraph& g, ExplorationRule& rule, std::size_t steps, RngStream& rng) {
  GraphExplorer ex(g);
  for (std::size_t k = 0; k < steps; ++k) ex.step(rule, rng);
  return ex.take();
}

TvEstimate exploration_tv_estimate(const GraphSampler& a, const GraphSampler& b, const ExplorationRule& rule,
                                   std::size_t steps, std::size_t samples, RngStream& rng) {
  if (samples == 0) fail(ErrorCode::EmptySample, "no samples");
  std::vector<ExplorationKey> ka, kb;
  ka.reserve(samples);
  kb.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    for (int side = 0; side < 2; ++side) {
      RngStream r = rng.split(2 * i + side);
      const RootedGraph g = side == 0 ? a(r) : b(r);
      auto local = rule.clone();
      local->reset();
      const Exploration x = explore(g, *local, steps, r);
      (side == 0 ? ka : kb).push_back(canonical_key(x));
    }
  }
  return tv_empirical<ExplorationKey>(ka, kb);
}

ConditionedSample condition_on_component_size(const GraphSampler& sampler, std::size_t rho, const ExplorationRule& rule,
                                              std::size_t steps, std::size_t samples, RngStream& rng,
                                              double min_acceptance) {
  if (!rule.proper()) fail(ErrorCode::ImproperRule, "conditioning needs a proper rule");
  if (samples == 0) fail(ErrorCode::EmptySample, "no samples");
  const std::size_t budget = static_cast<std::size_t>(std::ceil(static_cast<double>(samples) / min_acceptance));
  const std::size_t total_steps = std::max(steps, rho > 0 ? rho - 1 : 0);
  ConditionedSample out;
  while (out.keys.size() < samples) {
    if (out.attempts >= budget)
      fail(ErrorCode::AcceptanceTooLow, "acceptance rate below " + std::to_string(min_acceptance));
    RngStream r = rng.split(out.attempts++);
    const RootedGraph g = sampler(r);
    auto local = rule.clone();
    local->reset();
    GraphExplorer ex(g);
    std::size_t k = 0;
    for (; k < steps; ++k) ex.step(*local, r);
    ExplorationKey key = canonical_key(ex.exploration());
    for (; k < total_steps; ++k) ex.step(*local, r);
    if (ex.exploration().num_vertices() >= rho) out.keys.push_back(std::move(key));
  }
  return out;
}

WalkDisclosure disclosed_by_walks(const RootedGraph& g, std::size_t m, double tau, RngStream& rng) {
  validate_roots(g);
  if (!(tau > 0.0)) fail(ErrorCode::InvalidTau, "tau must be positive");
  const Generator gen(g.graph);
  WalkDisclosure out;
  std::vector<VertexId> seen{g.roots.front()};
  for (std::size_t i = 0; i < m; ++i) {
    RngStream r = rng.split(i);
    out.walks.push_back(simulate_walk(gen, g.roots.front(), 2.0 * tau, r));
    const auto range = range_of(out.walks.back());
    seen.insert(seen.end(), range.begin(), range.end());
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  out.disclosed = disclosed_subgraph(g.graph, seen);
  return out;
}

const char* to_string(CoupledResult::Failure f) {
  switch (f) {
    case CoupledResult::Failure::None: return "none";
    case CoupledResult::Failure::Collision: return "collision";
    case CoupledResult::Failure::Cycle: return "cycle";
    case CoupledResult::Failure::DegreeMax: return "degmax";
  }
  return "none";
}

}  // namespace tracelab
