#include "tracelab/isomorphism.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace tracelab {

namespace {

using PairKey = std::pair<VertexId, VertexId>;

PairKey pair_key(VertexId x, VertexId y) { return x <= y ? PairKey{x, y} : PairKey{y, x}; }

struct Prepared {
  const RootedGraph* g;
  std::vector<char> is_root;
  std::vector<std::tuple<char, double, std::size_t, std::vector<std::pair<int, double>>>> signature;
  std::map<PairKey, std::vector<double>> pair_betas;
  std::map<PairKey, std::vector<EdgeId>> pair_edges;
  std::vector<std::vector<VertexId>> neighbours;
};

Prepared prepare(const RootedGraph& rg, bool match_roots) {
  const auto& g = rg.graph;
  Prepared p;
  p.g = &rg;
  p.is_root.assign(g.num_vertices(), 0);
  if (match_roots)
    for (VertexId r : rg.roots) p.is_root[r] = 1;
  p.neighbours.resize(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.endpoints(e);
    const PairKey k = pair_key(a, b);
    p.pair_betas[k].push_back(g.beta(e));
    p.pair_edges[k].push_back(e);
    if (b != kCemetery && a != b) {
      p.neighbours[a].push_back(b);
      p.neighbours[b].push_back(a);
    }
  }
  for (auto& [k, v] : p.pair_betas) std::sort(v.begin(), v.end());
  for (auto& [k, v] : p.pair_edges)
    std::stable_sort(v.begin(), v.end(), [&](EdgeId x, EdgeId y) { return g.beta(x) < g.beta(y); });
  for (auto& nb : p.neighbours) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  p.signature.resize(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    std::vector<std::pair<int, double>> inc;
    for (EdgeId e : g.incident(v)) {
      const int kind = g.is_loop(e) ? 1 : (g.is_cemetery_edge(e) ? 2 : 0);
      inc.emplace_back(kind, g.beta(e));
    }
    std::sort(inc.begin(), inc.end());
    p.signature[v] = {p.is_root[v], g.alpha(v), g.degree(v), std::move(inc)};
  }
  return p;
}

const std::vector<double>* betas_of(const Prepared& p, VertexId x, VertexId y) {
  auto it = p.pair_betas.find(pair_key(x, y));
  return it == p.pair_betas.end() ? nullptr : &it->second;
}

class Matcher {
 public:
  Matcher(const Prepared& a, const Prepared& b, const IsomorphismOptions& opt) : a_(a), b_(b), opt_(opt) {
    const std::size_t n = a.g->graph.num_vertices();
    map_.assign(n, kCemetery);
    inverse_.assign(n, kCemetery);
    fixed_at_.resize(n);
    for (std::size_t i = 0; i < opt.fixed_edges.size(); ++i) {
      const auto [ea, eb] = opt.fixed_edges[i];
      const auto [x, y] = a.g->graph.endpoints(ea);
      fixed_at_[x].push_back(i);
      if (y != kCemetery && y != x) fixed_at_[y].push_back(i);
    }
    // Breadth-first order from the roots keeps the candidate sets small.
    std::vector<char> seen(n, 0);
    std::deque<VertexId> queue;
    auto push = [&](VertexId v) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    };
    for (VertexId r : a.g->roots) push(r);
    for (VertexId s = 0; s < n || !queue.empty();) {
      if (queue.empty()) {
        push(s++);
        continue;
      }
      const VertexId v = queue.front();
      queue.pop_front();
      order_.push_back(v);
      for (VertexId w : a.neighbours[v]) push(w);
    }
  }

  bool run(std::size_t depth = 0) {
    if (depth == order_.size()) return true;
    const VertexId v = order_[depth];
    for (VertexId c = 0; c < inverse_.size(); ++c) {
      if (inverse_[c] != kCemetery || a_.signature[v] != b_.signature[c]) continue;
      if (!consistent(v, c)) continue;
      map_[v] = c;
      inverse_[c] = v;
      if (run(depth + 1)) return true;
      map_[v] = kCemetery;
      inverse_[c] = kCemetery;
    }
    return false;
  }

  const std::vector<VertexId>& map() const { return map_; }

 private:
  bool consistent(VertexId v, VertexId c) const {
    std::size_t mapped_a = 0;
    for (VertexId u : a_.neighbours[v]) {
      if (map_[u] == kCemetery) continue;
      ++mapped_a;
      const auto* ba = betas_of(a_, v, u);
      const auto* bb = betas_of(b_, c, map_[u]);
      if (!bb || *ba != *bb) return false;
    }
    std::size_t mapped_b = 0;
    for (VertexId w : b_.neighbours[c])
      if (inverse_[w] != kCemetery) ++mapped_b;
    if (mapped_a != mapped_b) return false;
    for (std::size_t i : fixed_at_[v]) {
      const auto [ea, eb] = opt_.fixed_edges[i];
      auto [x, y] = a_.g->graph.endpoints(ea);
      auto mx = x == v ? c : map_[x];
      auto my = y == kCemetery ? kCemetery : (y == v ? c : map_[y]);
      if (mx == kCemetery && x != kCemetery) continue;
      if (y != kCemetery && my == kCemetery) continue;
      if (pair_key(mx, my) != pair_key(b_.g->graph.endpoints(eb).first, b_.g->graph.endpoints(eb).second))
        return false;
    }
    return true;
  }

  const Prepared& a_;
  const Prepared& b_;
  const IsomorphismOptions& opt_;
  std::vector<VertexId> map_;
  std::vector<VertexId> inverse_;
  std::vector<std::vector<std::size_t>> fixed_at_;
  std::vector<VertexId> order_;
};

}  // namespace

std::optional<Isomorphism> is_isomorphic(const RootedGraph& a, const RootedGraph& b, const IsomorphismOptions& options) {
  const auto& ga = a.graph;
  const auto& gb = b.graph;
  if (ga.num_vertices() != gb.num_vertices() || ga.num_edges() != gb.num_edges()) return std::nullopt;
  if (options.match_roots) {
    std::vector<VertexId> ra(a.roots), rb(b.roots);
    std::sort(ra.begin(), ra.end());
    ra.erase(std::unique(ra.begin(), ra.end()), ra.end());
    std::sort(rb.begin(), rb.end());
    rb.erase(std::unique(rb.begin(), rb.end()), rb.end());
    if (ra.size() != rb.size()) return std::nullopt;
  }
  {
    std::vector<EdgeId> used_a, used_b;
    for (const auto& [ea, eb] : options.fixed_edges) {
      if (ea >= ga.num_edges() || eb >= gb.num_edges()) return std::nullopt;
      if (ga.beta(ea) != gb.beta(eb)) return std::nullopt;
      if (ga.is_loop(ea) != gb.is_loop(eb) || ga.is_cemetery_edge(ea) != gb.is_cemetery_edge(eb)) return std::nullopt;
      used_a.push_back(ea);
      used_b.push_back(eb);
    }
    // Repeated entries must repeat consistently.
    std::map<EdgeId, EdgeId> fwd, bwd;
    for (const auto& [ea, eb] : options.fixed_edges) {
      auto [i, fresh_f] = fwd.emplace(ea, eb);
      auto [j, fresh_b] = bwd.emplace(eb, ea);
      if (i->second != eb || j->second != ea) return std::nullopt;
    }
  }
  const Prepared pa = prepare(a, options.match_roots);
  const Prepared pb = prepare(b, options.match_roots);
  {
    auto sa = pa.signature, sb = pb.signature;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  Matcher m(pa, pb, options);
  if (!m.run()) return std::nullopt;

  Isomorphism iso;
  iso.vertex_map = m.map();
  iso.edge_map.assign(ga.num_edges(), kCemetery);
  std::vector<char> taken(gb.num_edges(), 0);
  for (const auto& [ea, eb] : options.fixed_edges) {
    iso.edge_map[ea] = eb;
    taken[eb] = 1;
  }
  for (const auto& [key, edges_a] : pa.pair_edges) {
    const VertexId x = iso.vertex_map[key.first];
    const VertexId y = key.second == kCemetery ? kCemetery : iso.vertex_map[key.second];
    const auto& edges_b = pb.pair_edges.at(pair_key(x, y));
    std::vector<EdgeId> free_b;
    for (EdgeId e : edges_b)
      if (!taken[e]) free_b.push_back(e);
    std::size_t k = 0;
    for (EdgeId e : edges_a) {
      if (iso.edge_map[e] != kCemetery) continue;
      iso.edge_map[e] = free_b[k++];
    }
  }
  return iso;
}

}  // namespace tracelab
