#include "tracelab/percolation.hpp"

#include <algorithm>
#include <cmath>

#include "tracelab/error.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/union_find.hpp"

namespace tracelab {

PercolationMode parse_percolation_mode(const std::string& s) {
  if (s == "site") return PercolationMode::Site;
  if (s == "bond") return PercolationMode::Bond;
  fail(ErrorCode::ConfigError, "mode must be site or bond, got '" + s + "'");
}

std::string to_string(PercolationMode m) { return m == PercolationMode::Site ? "site" : "bond"; }

bool VacantGraph::edge_open(EdgeId e) const {
  if (removed_edge[e]) return false;
  const auto [u, v] = base->endpoints(e);
  if (u == kCemetery || v == kCemetery) return false;
  return !removed_vertex[u] && !removed_vertex[v];
}

namespace {

VacantGraph empty_vacant(const WeightedMultiGraph& g, double time, PercolationMode mode) {
  if (!(time >= 0.0)) fail(ErrorCode::NonpositiveTime, "removal time must be nonnegative");
  VacantGraph vg;
  vg.base = &g;
  vg.mode = mode;
  vg.time = time;
  vg.removed_vertex.assign(g.num_vertices(), 0);
  vg.removed_edge.assign(g.num_edges(), 0);
  return vg;
}

void remove_site(VacantGraph& vg, VertexId v) {
  if (v == kCemetery || vg.removed_vertex[v]) return;
  vg.removed_vertex[v] = 1;
  ++vg.removed;
}

void remove_bond(VacantGraph& vg, EdgeId e) {
  if (e == kCemetery || vg.removed_edge[e]) return;
  vg.removed_edge[e] = 1;
  ++vg.removed;
}

}  // namespace

VacantGraph vacant_graph(const WeightedMultiGraph& g, std::span<const TrajectorySegment> walks, double time,
                         PercolationMode mode) {
  VacantGraph vg = empty_vacant(g, time, mode);
  for (const auto& w : walks) {
    if (mode == PercolationMode::Site) remove_site(vg, w.start);
    for (const auto& j : w.jumps) {
      if (j.time > time) break;
      if (mode == PercolationMode::Site)
        remove_site(vg, j.to);
      else
        remove_bond(vg, j.edge);
    }
  }
  return vg;
}

VacantGraph vacant_graph(const WeightedMultiGraph& g, double time, PercolationMode mode, RngStream& rng,
                         std::size_t walks) {
  VacantGraph vg = empty_vacant(g, time, mode);
  const Generator gen(g);
  for (std::size_t i = 0; i < walks; ++i) {
    RngStream r = rng.split(i);
    Walker w(gen, gen.sample_stationary(r));
    if (mode == PercolationMode::Site) remove_site(vg, w.position());
    for (;;) {
      const Jump j = w.step(r);
      if (j.time > time) break;
      if (mode == PercolationMode::Site)
        remove_site(vg, j.to);
      else
        remove_bond(vg, j.edge);
    }
  }
  return vg;
}

double ComponentStats::fraction_at_least(std::size_t k) const {
  if (num_vertices == 0) return 0.0;
  std::size_t s = 0;
  for (std::size_t c : sizes)
    if (c >= k) s += c;
  return static_cast<double>(s) / static_cast<double>(num_vertices);
}

double ComponentStats::disconnected_pairs(std::size_t k) const {
  double s = 0.0, sq = 0.0;
  for (std::size_t c : sizes) {
    if (c < k) continue;
    s += static_cast<double>(c);
    sq += static_cast<double>(c) * static_cast<double>(c);
  }
  return s * s - sq;
}

double ComponentStats::pair_disconnected(std::size_t k) const {
  if (num_vertices == 0) return 0.0;
  const double n = static_cast<double>(num_vertices);
  return disconnected_pairs(k) / (n * n);
}

ComponentStats components(const VacantGraph& vg) {
  const auto& g = *vg.base;
  const std::size_t n = g.num_vertices();
  UnionFind uf(n);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (g.is_loop(e) || !vg.edge_open(e)) continue;
    const auto [u, v] = g.endpoints(e);
    uf.unite(u, v);
  }
  ComponentStats st;
  st.num_vertices = n;
  st.component_of.assign(n, kNoComponent);
  std::vector<std::uint32_t> root_id(n, kNoComponent);
  std::vector<std::size_t> raw;
  for (VertexId v = 0; v < n; ++v) {
    if (!vg.vertex_vacant(v)) continue;
    ++st.vacant;
    const std::uint32_t r = uf.find(v);
    if (root_id[r] == kNoComponent) {
      root_id[r] = static_cast<std::uint32_t>(raw.size());
      raw.push_back(0);
    }
    st.component_of[v] = root_id[r];
    ++raw[root_id[r]];
  }
  st.sizes = raw;
  std::sort(st.sizes.begin(), st.sizes.end(), std::greater<>());
  // component_of indexes the unsorted list; remap to the sorted order.
  std::vector<std::uint32_t> order(raw.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return raw[a] > raw[b]; });
  std::vector<std::uint32_t> rank(raw.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  for (auto& c : st.component_of)
    if (c != kNoComponent) c = rank[c];
  return st;
}

MaxSqBounds maxsq_bounds(std::span<const double> a) {
  MaxSqBounds b;
  double s = 0.0, sq = 0.0, mx = 0.0;
  for (double x : a) {
    if (!(x >= 0.0)) fail(ErrorCode::InvalidArgument, "entries must be nonnegative");
    s += x;
    sq += x * x;
    mx = std::max(mx, x);
  }
  const double cross = (s * s - sq) / 2.0;  // sum_{i<j} a_i a_j
  b.lower = s * s - 3.0 * cross;
  b.max_sq = mx * mx;
  b.upper = s * s - 2.0 * cross;
  return b;
}

ComponentFormCheck component_form_check(const ComponentStats& stats, std::size_t k) {
  ComponentFormCheck c;
  std::size_t s = 0;
  for (std::size_t size : stats.sizes)
    if (size >= k) s += size;
  c.s = static_cast<double>(s);
  c.ordered_pairs = stats.disconnected_pairs(k);
  const double cmax = static_cast<double>(stats.largest());
  c.cmax_sq = cmax * cmax;
  c.lower = c.s * c.s - 1.5 * c.ordered_pairs;
  c.upper = c.s * c.s - c.ordered_pairs;
  c.upper_applicable = stats.largest() >= k;
  c.holds = c.lower <= c.cmax_sq && (!c.upper_applicable || c.cmax_sq <= c.upper);
  return c;
}

PairEstimate pair_condition_estimate(const PercolationSampler& sampler, double time, std::size_t k,
                                     std::size_t n_pairs, RngStream& rng, PercolationMode mode,
                                     std::size_t pairs_per_graph) {
  if (n_pairs == 0 || pairs_per_graph == 0) fail(ErrorCode::InvalidArgument, "pair counts must be positive");
  std::size_t hits = 0, done = 0;
  for (std::size_t rep = 0; done < n_pairs; ++rep) {
    RngStream r = rng.split(rep);
    RngStream graph_rng = r.split(0), walk_rng = r.split(1), pair_rng = r.split(2);
    const WeightedMultiGraph g = sampler(graph_rng);
    if (g.num_vertices() == 0) fail(ErrorCode::EmptySet, "sampled graph is empty");
    const ComponentStats st = components(vacant_graph(g, time, mode, walk_rng));
    const std::size_t batch = std::min(pairs_per_graph, n_pairs - done);
    for (std::size_t i = 0; i < batch; ++i) {
      const auto o = static_cast<VertexId>(pair_rng.below(g.num_vertices()));
      const auto o2 = static_cast<VertexId>(pair_rng.below(g.num_vertices()));
      const std::uint32_t co = st.component_of[o], co2 = st.component_of[o2];
      if (co == kNoComponent || co2 == kNoComponent || co == co2) continue;
      if (st.sizes[co] >= k && st.sizes[co2] >= k) ++hits;
    }
    done += batch;
  }
  PairEstimate e;
  e.pairs = n_pairs;
  e.value = static_cast<double>(hits) / static_cast<double>(n_pairs);
  e.half_width = 3.0 * std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n_pairs));
  return e;
}

std::vector<PercolationRow> giant_vs_survival_experiment(const PercolationSampler& sampler, double sigma, double a,
                                                         std::span<const std::size_t> k_list, std::size_t replicas,
                                                         PercolationMode mode, RngStream rng, int threads) {
  if (!(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "sigma must be nonnegative");
  if (k_list.empty()) fail(ErrorCode::InvalidArgument, "k list is empty");
  const std::vector<std::size_t> ks(k_list.begin(), k_list.end());
  return parallel_map(replicas, threads, [&](std::size_t i) {
    RngStream r = rng.split(i);
    RngStream graph_rng = r.split(0), walk_rng = r.split(1);
    const WeightedMultiGraph g = sampler(graph_rng);
    const double scale = a > 0.0 ? a : static_cast<double>(g.num_vertices());
    const VacantGraph vg = vacant_graph(g, sigma * scale, mode, walk_rng);
    const ComponentStats st = components(vg);
    PercolationRow row;
    row.replica = i;
    row.n = g.num_vertices();
    row.removed = vg.removed;
    row.cmax = st.largest();
    for (std::size_t k : ks) {
      row.n_k.push_back(st.fraction_at_least(k));
      row.component_form_holds = row.component_form_holds && component_form_check(st, k).holds;
    }
    row.pair_estimate = st.pair_disconnected(ks.front());
    return row;
  });
}

}  // namespace tracelab
