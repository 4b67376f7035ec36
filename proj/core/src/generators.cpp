#include "tracelab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_map>

#include "tracelab/error.hpp"
#include "tracelab/union_find.hpp"

namespace tracelab {

DegreeDistribution::DegreeDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) fail(ErrorCode::NotADistribution, "empty law");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) fail(ErrorCode::NotADistribution, "negative or non-finite mass");
    total += p;
    cumulative_.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorCode::NotADistribution, "masses sum to " + std::to_string(total));
}

DegreeDistribution DegreeDistribution::regular(std::size_t d) {
  std::vector<double> p(d + 1, 0.0);
  p[d] = 1.0;
  return DegreeDistribution(std::move(p));
}

DegreeDistribution DegreeDistribution::poisson(double mean, std::size_t kmax) {
  if (!(mean >= 0.0)) fail(ErrorCode::InvalidArgument, "negative mean");
  std::vector<double> p(kmax + 1);
  double pk = std::exp(-mean), total = 0.0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    p[k] = pk;
    total += pk;
    pk *= mean / static_cast<double>(k + 1);
  }
  for (double& x : p) x /= total;
  return DegreeDistribution(std::move(p));
}

double DegreeDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) m += static_cast<double>(k) * probs_[k];
  return m;
}

double DegreeDistribution::pgf(double s) const {
  double acc = 0.0;
  for (std::size_t k = probs_.size(); k-- > 0;) acc = acc * s + probs_[k];
  return acc;
}

std::size_t DegreeDistribution::sample(RngStream& rng) const { return rng.pick_cumulative(cumulative_); }

DegreeDistribution size_bias(const DegreeDistribution& d) {
  const double m = d.mean();
  if (!(m > 0.0)) fail(ErrorCode::ZeroMean, "size bias of a law with zero mean");
  std::vector<double> p(d.probs().size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = static_cast<double>(k) * d.probs()[k] / m;
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return DegreeDistribution(std::move(p));
}

std::vector<std::size_t> sample_degree_sequence(const DegreeDistribution& d, std::size_t n, RngStream& rng) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "n must be positive");
  std::vector<std::size_t> deg(n);
  std::size_t sum = 0;
  for (auto& k : deg) {
    k = d.sample(rng);
    sum += k;
  }
  if (sum % 2) ++deg.back();
  return deg;
}

namespace {

WeightedMultiGraph from_pairs(const std::vector<std::size_t>& degree, std::vector<std::pair<VertexId, VertexId>> ends) {
  std::vector<double> alpha(degree.size());
  for (std::size_t v = 0; v < degree.size(); ++v) alpha[v] = degree[v] > 0 ? static_cast<double>(degree[v]) : 1.0;
  std::vector<double> beta(ends.size(), 1.0);
  return WeightedMultiGraph(std::move(alpha), std::move(ends), std::move(beta));
}

}  // namespace

WeightedMultiGraph pair_half_edges(std::span<const std::size_t> degrees, RngStream& rng) {
  std::size_t total = 0;
  for (auto k : degrees) total += k;
  if (total % 2) fail(ErrorCode::OddDegreeSum, "degree sum " + std::to_string(total));
  std::vector<VertexId> half;
  half.reserve(total);
  for (VertexId v = 0; v < degrees.size(); ++v) half.insert(half.end(), degrees[v], v);
  for (std::size_t i = half.size(); i > 1; --i) std::swap(half[i - 1], half[rng.below(i)]);
  std::vector<std::pair<VertexId, VertexId>> ends;
  ends.reserve(total / 2);
  for (std::size_t i = 0; i + 1 < half.size(); i += 2) ends.emplace_back(half[i], half[i + 1]);
  return from_pairs(std::vector<std::size_t>(degrees.begin(), degrees.end()), std::move(ends));
}

WeightedMultiGraph configuration_model(const DegreeDistribution& d, std::size_t n, RngStream& rng) {
  const auto deg = sample_degree_sequence(d, n, rng);
  return pair_half_edges(deg, rng);
}

WeightedMultiGraph erdos_renyi_gnm(std::size_t n, std::uint64_t m, RngStream& rng) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "n must be positive");
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  m = std::min(m, pairs);
  // Partial Fisher-Yates over the pair index space with sparse storage.
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto value = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<std::uint64_t> chosen;
  chosen.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::uint64_t j = i + rng.below(pairs - i);
    const std::uint64_t vi = value(i), vj = value(j);
    swapped[j] = vi;
    swapped[i] = vj;
    chosen.push_back(vj);
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::pair<VertexId, VertexId>> ends;
  ends.reserve(m);
  std::vector<std::size_t> degree(n, 0);
  for (std::uint64_t k : chosen) {
    // k = j (j - 1) / 2 + i with 0 <= i < j < n.
    std::uint64_t j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(k))) / 2.0);
    while (j * (j - 1) / 2 > k) --j;
    while ((j + 1) * j / 2 <= k) ++j;
    const std::uint64_t i = k - j * (j - 1) / 2;
    ends.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    ++degree[i];
    ++degree[j];
  }
  return from_pairs(degree, std::move(ends));
}

GwpTree sample_gwp_tree(const DegreeDistribution& d, const DegreeDistribution& d_star, RngStream& rng,
                        const GwpTreeOptions& options) {
  if (options.max_depth == 0 || options.max_vertices == 0) fail(ErrorCode::TruncationZero, "truncation limits must be positive");
  GwpTree t;
  std::vector<VertexId> parent{kCemetery};
  t.depth.push_back(0);
  t.children.push_back(static_cast<std::uint32_t>(d.sample(rng)));
  std::deque<VertexId> queue{0};
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    if (t.depth[v] >= options.max_depth) {
      if (t.children[v] > 0) t.truncated = true;
      continue;
    }
    for (std::uint32_t c = 0; c < t.children[v]; ++c) {
      if (parent.size() >= options.max_vertices) {
        t.truncated = true;
        break;
      }
      const VertexId w = static_cast<VertexId>(parent.size());
      parent.push_back(v);
      t.depth.push_back(t.depth[v] + 1);
      const std::size_t k = d_star.sample(rng);
      t.children.push_back(static_cast<std::uint32_t>(k > 0 ? k - 1 : 0));
      queue.push_back(w);
    }
  }
  const std::size_t n = parent.size();
  std::vector<double> alpha(n);
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (VertexId v = 0; v < n; ++v) {
    const double deg = t.children[v] + (v == 0 ? 0.0 : 1.0);
    alpha[v] = deg > 0.0 ? deg : 1.0;
    if (v > 0) ends.emplace_back(parent[v], v);
  }
  std::vector<double> beta(ends.size(), 1.0);
  t.tree.graph = WeightedMultiGraph(std::move(alpha), std::move(ends), std::move(beta));
  t.tree.roots = {0};
  return t;
}

std::vector<std::vector<VertexId>> connected_components(const WeightedMultiGraph& g) {
  UnionFind uf(g.num_vertices());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.endpoints(e);
    if (b != kCemetery && a != b) uf.unite(a, b);
  }
  std::vector<std::int64_t> index(g.num_vertices(), -1);
  std::vector<std::vector<VertexId>> comps;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const auto r = uf.find(v);
    if (index[r] < 0) {
      index[r] = static_cast<std::int64_t>(comps.size());
      comps.emplace_back();
    }
    comps[index[r]].push_back(v);
  }
  return comps;
}

RootedGraph largest_component(const WeightedMultiGraph& g, RngStream& rng) {
  if (g.num_vertices() == 0) fail(ErrorCode::EmptySet, "graph has no vertices");
  const auto comps = connected_components(g);
  std::size_t best = 0;
  for (const auto& c : comps) best = std::max(best, c.size());
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (comps[i].size() == best) ties.push_back(i);
  const auto& comp = comps[ties[rng.below(ties.size())]];
  RootedGraph out;
  out.graph = induced_subgraph(g, comp);
  out.roots = {static_cast<VertexId>(rng.below(comp.size()))};
  return out;
}

SurvivalResult gw_survival(const DegreeDistribution& d, const DegreeDistribution& d_star) {
  // Offspring generating function E[q^{D*-1}].
  const auto& ps = d_star.probs();
  auto offspring = [&](double q) {
    double acc = 0.0;
    for (std::size_t k = ps.size(); k-- > 1;) acc = acc * q + ps[k];
    return acc;
  };
  SurvivalResult r;
  double q = 0.0;
  for (std::size_t it = 1; it <= 1000000; ++it) {
    const double next = offspring(q);
    r.iterations = it;
    if (std::abs(next - q) < 1e-12) {
      q = next;
      r.extinction = q;
      r.survival = 1.0 - d.pgf(q);
      return r;
    }
    q = next;
  }
  fail(ErrorCode::NonConvergence, "fixed-point iteration did not settle");
}

EllSchedule ell_schedule(double tau_exponent, std::size_t n) {
  if (!(tau_exponent > 2.0)) fail(ErrorCode::InvalidArgument, "tail exponent must exceed 2");
  if (n < 2) fail(ErrorCode::InvalidArgument, "n must be at least 2");
  EllSchedule s;
  s.exponent = std::min((tau_exponent - 2.0) / tau_exponent, 0.5) * 0.9;
  s.ell = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), s.exponent) + 1e-9));
  s.ell = std::max<std::size_t>(s.ell, 1);
  const double logn = std::log(static_cast<double>(n));
  s.tau_n = logn * logn;
  s.ell_prime = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(s.ell)) - 1e-12));
  s.m = (s.ell + s.ell_prime - 1) / s.ell_prime;
  s.a_n = static_cast<double>(n);
  return s;
}

bool degree_sequence_regular_enough(std::span<const std::size_t> degrees) {
  if (degrees.empty()) return false;
  const double cap = std::pow(static_cast<double>(degrees.size()), 0.02);
  for (auto k : degrees)
    if (k < 3 || static_cast<double>(k) > cap) return false;
  return true;
}

}  // namespace tracelab
