#include "tracelab/equilibrium.hpp"

#include <algorithm>
#include <string>

#include "tracelab/error.hpp"

namespace tracelab {

namespace {

std::vector<VertexId> normalized_target(const WeightedMultiGraph& g, std::span<const VertexId> target) {
  if (target.empty()) fail(ErrorCode::EmptySet, "target set is empty");
  std::vector<VertexId> b(target.begin(), target.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  for (VertexId v : b)
    if (v >= g.num_vertices()) fail(ErrorCode::NotAVertex, "vertex " + std::to_string(v));
  return b;
}

void check_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) fail(ErrorCode::InvalidTau, "tau must be finite and nonnegative");
}

// Fills measure-derived constants; `d` is the mixing distance at tau or NaN.
void finalize(EquilibriumReport& r, const WeightedMultiGraph& g, double d) {
  r.capacity = 0.0;
  for (VertexId y : r.target) r.capacity += r.measure[y];
  r.total_alpha = g.total_alpha();
  r.pi_target = total_vertex_weight(g, r.target) / r.total_alpha;
  r.capacity0 = capacity_zero(g, r.target);
  r.lambda = r.capacity / r.total_alpha;
  r.lambda0 = r.capacity0 / r.total_alpha;
  r.mixing_distance = d;
  r.degenerate_capacity = r.capacity <= 0.0;
  if (r.degenerate_capacity || std::isnan(d)) {
    r.kappa = kNaN;
    r.preconditions_met = false;
    return;
  }
  r.kappa = 4.0 * (r.lambda0 / r.lambda) * (d + r.tau * r.lambda0);
  r.preconditions_met = r.kappa > 0.0 && -std::log(r.kappa) >= 2.0 * r.tau * r.lambda &&
                        2.0 * r.lambda0 <= 1.0 - r.pi_target;
}

}  // namespace

double capacity_zero(const WeightedMultiGraph& g, std::span<const VertexId> target) {
  const auto in = indicator(g.num_vertices(), target);
  double s = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.endpoints(e);
    if (b == kCemetery || a == b) continue;
    if (in[a] != in[b]) s += g.beta(e);
  }
  return s;
}

EquilibriumReport equilibrium_measure_exact(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                                            std::size_t cap) {
  check_tau(tau);
  EquilibriumReport r;
  r.target = normalized_target(g, target);
  r.tau = tau;
  const auto tail = hitting_tail_exact(g, r.target, tau, cap);
  const auto in = indicator(g.num_vertices(), r.target);
  r.measure.assign(g.num_vertices(), 0.0);
  for (VertexId y : r.target) {
    double s = 0.0;
    for (EdgeId e : g.incident(y)) {
      if (g.is_loop(e)) continue;
      const VertexId z = g.other(e, y);
      if (z == kCemetery || in[z]) continue;
      s += g.beta(e) * tail[z];
    }
    r.measure[y] = s;
  }
  finalize(r, g, mixing_distance_exact(g, tau, cap));
  return r;
}

EquilibriumReport equilibrium_measure_mc(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                                         std::size_t samples, RngStream& rng, double horizon) {
  check_tau(tau);
  if (samples == 0) fail(ErrorCode::EmptySample, "no samples");
  EquilibriumReport r;
  r.target = normalized_target(g, target);
  r.tau = tau;
  const double run_for = std::min(tau, horizon);
  const auto in = indicator(g.num_vertices(), r.target);
  const Generator gen(g);
  std::vector<double> escape(g.num_vertices(), -1.0);
  r.measure.assign(g.num_vertices(), 0.0);
  r.half_width.assign(g.num_vertices(), 0.0);
  for (VertexId y : r.target) {
    double s = 0.0, var = 0.0;
    for (EdgeId e : g.incident(y)) {
      if (g.is_loop(e)) continue;
      const VertexId z = g.other(e, y);
      if (z == kCemetery || in[z]) continue;
      if (escape[z] < 0.0) {
        RngStream rz = rng.split(z);
        std::size_t survived = 0;
        for (std::size_t k = 0; k < samples; ++k) {
          Walker w(gen, z);
          bool hit = false;
          for (;;) {
            const Jump j = w.step(rz);
            if (j.time > run_for) break;
            if (j.to != kCemetery && in[j.to]) {
              hit = true;
              break;
            }
          }
          if (!hit) ++survived;
        }
        escape[z] = static_cast<double>(survived) / static_cast<double>(samples);
      }
      s += g.beta(e) * escape[z];
      var += g.beta(e) * std::sqrt(escape[z] * (1.0 - escape[z]) / static_cast<double>(samples));
    }
    r.measure[y] = s;
    r.half_width[y] = 3.0 * var;
  }
  const double d = g.num_vertices() <= kDenseCap && !g.generalized() ? mixing_distance_exact(g, tau) : kNaN;
  finalize(r, g, d);
  return r;
}

double EntranceLaw::cdf(double t) const {
  double s = 0.0;
  for (VertexId y : target) s += cdf(y, t);
  return s;
}

double EntranceLaw::cdf(VertexId y, double t) const {
  if (t < 0.0) return 0.0;
  const ExpSum& f = density[y];
  return atom[y] + f.integral(0.0) - f.integral(t);
}

EntranceLaw entrance_law_exact(const WeightedMultiGraph& g, std::span<const VertexId> target, std::size_t cap) {
  EntranceLaw law;
  law.target = normalized_target(g, target);
  const KilledSpectrum spec(g, law.target, cap);
  const auto in = indicator(g.num_vertices(), law.target);
  const double total = g.total_alpha();
  law.atom.assign(g.num_vertices(), 0.0);
  law.density.assign(g.num_vertices(), ExpSum{});
  for (VertexId y : law.target) {
    const double pi_y = g.alpha(y) / total;
    law.atom[y] = pi_y;
    ExpSum f;
    for (EdgeId e : g.incident(y)) {
      if (g.is_loop(e)) continue;
      const VertexId z = g.other(e, y);
      if (z == kCemetery || in[z]) continue;
      f.add(spec.survival(z), pi_y * g.beta(e) / g.alpha(y));
    }
    law.density[y] = std::move(f);
  }
  return law;
}

std::vector<double> entrance_density_exact(const WeightedMultiGraph& g, std::span<const VertexId> target, VertexId y,
                                           std::span<const double> times, std::size_t cap) {
  const EntranceLaw law = entrance_law_exact(g, target, cap);
  if (y >= g.num_vertices()) fail(ErrorCode::NotAVertex, "vertex " + std::to_string(y));
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t < 0.0) fail(ErrorCode::InvalidArgument, "negative time");
    out.push_back(law.density_at(y, t));
  }
  return out;
}

std::vector<EntranceSample> sample_entrances(const WeightedMultiGraph& g, std::span<const VertexId> target,
                                             std::size_t n, RngStream& rng) {
  const auto b = normalized_target(g, target);
  const auto in = indicator(g.num_vertices(), b);
  const Generator gen(g);
  std::vector<EntranceSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId start = gen.sample_stationary(rng);
    if (in[start]) {
      out.push_back({0.0, start});
      continue;
    }
    Walker w(gen, start);
    for (;;) {
      const Jump j = w.step(rng);
      if (!std::isfinite(j.time)) fail(ErrorCode::IsolatedVertex, "walk cannot reach the target");
      if (j.to != kCemetery && in[j.to]) {
        out.push_back({j.time, j.to});
        break;
      }
    }
  }
  return out;
}

LemmaBReport lemma_b_audit(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                           std::span<const double> times, double tol, std::size_t cap) {
  if (!(tau > 0.0)) fail(ErrorCode::InvalidRange, "tau must be positive");
  for (double t : times)
    if (t < 2.0 * tau) fail(ErrorCode::InvalidRange, "times must be at least 2 tau");
  const auto b = normalized_target(g, target);
  const KilledSpectrum spec(g, b, cap);
  const auto pi = stationary(g);
  LemmaBReport r;
  r.tau = tau;
  r.rhs = 2.0 * mixing_distance_exact(g, tau, cap) + 2.0 * tau * capacity_zero(g, b) / g.total_alpha();
  const auto tail_tau = spec.survival_all(tau);
  for (double t : times) {
    const auto tail_t = spec.survival_all(t);
    double from_pi = 0.0;
    for (VertexId z = 0; z < pi.size(); ++z) from_pi += pi[z] * tail_t[z];
    for (VertexId y = 0; y < pi.size(); ++y) {
      const double lhs = std::abs(tail_t[y] - tail_tau[y] * from_pi);
      r.max_lhs = std::max(r.max_lhs, lhs);
      r.max_excess = std::max(r.max_excess, lhs - r.rhs);
      if (lhs > r.rhs + tol) ++r.violations;
      ++r.checks;
    }
  }
  return r;
}

AldousReport aldous_bound_audit(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                                std::size_t steps, std::size_t cap) {
  AldousReport r;
  r.equilibrium = equilibrium_measure_exact(g, target, tau, cap);
  const auto& eq = r.equilibrium;
  r.preconditions_met = eq.preconditions_met;
  if (eq.degenerate_capacity) fail(ErrorCode::PreconditionFailed, "capacity is zero");
  const EntranceLaw law = entrance_law_exact(g, eq.target, cap);

  const auto& mu = law.density[eq.target.front()].rate;
  double slowest = eq.lambda;
  for (double m : mu)
    if (m > 0.0) slowest = std::min(slowest, m);
  const double horizon = 40.0 / slowest;
  if (steps < 2) steps = 2;
  if (steps % 2) ++steps;
  const double h = horizon / static_cast<double>(steps);

  std::vector<double> decay(mu.size());
  auto integrand = [&](double s) {
    for (std::size_t k = 0; k < mu.size(); ++k) decay[k] = std::exp(-mu[k] * s);
    const double prod = eq.lambda * std::exp(-eq.lambda * s) / eq.capacity;
    double sum = 0.0;
    for (VertexId y : eq.target) {
      const auto& f = law.density[y];
      double a = 0.0;
      for (std::size_t k = 0; k < f.coef.size(); ++k) a += f.coef[k] * decay[k];
      sum += std::abs(a - prod * eq.measure[y]);
    }
    return sum;
  };
  // Composite Simpson rule.
  double acc = integrand(0.0) + integrand(horizon);
  for (std::size_t i = 1; i < steps; ++i) acc += (i % 2 ? 4.0 : 2.0) * integrand(h * static_cast<double>(i));
  const double integral = acc * h / 3.0;

  double tail = std::exp(-eq.lambda * horizon);
  for (VertexId y : eq.target) tail += law.density[y].integral(horizon);
  r.tv = 0.5 * (eq.pi_target + integral);
  r.tv_upper = r.tv + 0.5 * tail;
  const double k = eq.kappa;
  r.rhs = eq.pi_target + 2.0 * tau * eq.lambda0 + k * (1.0 + std::log(1.0 / k));
  r.slack = r.rhs - r.tv_upper;
  return r;
}

namespace {

using Prefix = std::vector<VertexId>;
using Exit = std::pair<int, VertexId>;

// TV between the empirical law of (a, b) and (empirical law of a) x q.
TvEstimate tv_against_product(const std::vector<std::pair<Prefix, Exit>>& samples, const std::map<Exit, double>& q) {
  std::map<std::pair<Prefix, Exit>, std::uint64_t> joint;
  std::map<Prefix, std::uint64_t> first;
  for (const auto& s : samples) {
    ++joint[s];
    ++first[s.first];
  }
  const double n = static_cast<double>(samples.size());
  std::map<Prefix, double> covered;
  double l1 = 0.0;
  for (const auto& [key, c] : joint) {
    const double fa = static_cast<double>(first[key.first]) / n;
    const auto it = q.find(key.second);
    const double qb = it == q.end() ? 0.0 : it->second;
    covered[key.first] += qb;
    l1 += std::abs(static_cast<double>(c) / n - fa * qb);
  }
  for (const auto& [a, c] : first) l1 += static_cast<double>(c) / n * std::max(0.0, 1.0 - covered[a]);
  // Changing one sample moves at most three cells by O(1/n).
  return {0.5 * l1, std::sqrt(9.0 / (4.0 * n)), joint.size()};
}

}  // namespace

JointReport joint_bound_audit(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                              std::size_t samples, RngStream& rng, std::size_t skeleton_jumps) {
  if (!(tau > 0.0)) fail(ErrorCode::InvalidTau, "tau must be positive");
  if (samples == 0) fail(ErrorCode::EmptySample, "no samples");
  JointReport r;
  r.equilibrium = equilibrium_measure_exact(g, target, tau);
  const auto& eq = r.equilibrium;
  if (eq.degenerate_capacity) fail(ErrorCode::PreconditionFailed, "capacity is zero");
  r.preconditions_met = eq.preconditions_met;
  const double k = eq.kappa;
  r.rhs = 2.0 * eq.pi_target + k * (3.0 + std::log(1.0 / k));

  constexpr int kBins = 8;
  std::vector<double> edges;
  for (int i = 1; i < kBins; ++i) edges.push_back(-std::log(1.0 - static_cast<double>(i) / kBins) / eq.lambda);
  auto bin_of = [&](double t) { return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), t) - edges.begin()); };
  std::map<Exit, double> q;
  for (int b = 0; b < kBins; ++b)
    for (VertexId y : eq.target) q[{b, y}] = eq.measure[y] / eq.capacity / kBins;

  const auto in = indicator(g.num_vertices(), eq.target);
  const Generator gen(g);
  std::vector<std::pair<Prefix, Exit>> full, initial;
  full.reserve(samples);
  initial.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const VertexId start = gen.sample_stationary(rng);
    Prefix prefix{start};
    Walker w(gen, start);
    double entry_time = -1.0;
    VertexId entry = kCemetery;
    std::size_t jumps = 0;
    for (;;) {
      const VertexId before = w.position();
      const Jump j = w.step(rng);
      if (j.time <= tau) {
        if (jumps < skeleton_jumps) prefix.push_back(j.to);
        ++jumps;
        continue;
      }
      // `before` is the state at time tau.
      if (in[before]) {
        entry_time = tau;
        entry = before;
      } else {
        Jump cur = j;
        while (!(cur.to != kCemetery && in[cur.to])) {
          if (!std::isfinite(cur.time)) fail(ErrorCode::IsolatedVertex, "walk cannot reach the target");
          cur = w.step(rng);
        }
        entry_time = cur.time;
        entry = cur.to;
      }
      break;
    }
    if (jumps > skeleton_jumps) prefix.push_back(kCemetery);
    const Exit exit{bin_of(entry_time), entry};
    full.emplace_back(std::move(prefix), exit);
    initial.emplace_back(Prefix{start}, exit);
  }
  r.lhs = tv_against_product(full, q);
  r.lhs_initial_state = tv_against_product(initial, q);
  return r;
}

double visit_constant(const EquilibriumReport& report) {
  const double k = report.kappa;
  return 2.0 * report.pi_target + k * (3.0 + std::log(1.0 / k));
}

VisitBound visit_coupling_bound(const EquilibriumReport& report, double a, double t) {
  if (!(a > 0.0) || !(t >= 0.0)) fail(ErrorCode::InvalidArgument, "a must be positive and t nonnegative");
  VisitBound vb;
  vb.preconditions_met = report.preconditions_met;
  if (!report.preconditions_met) return vb;
  vb.c = visit_constant(report);
  const double exponent = a * report.capacity * t / report.total_alpha;
  double best = std::numeric_limits<double>::infinity();
  for (int rho = 1; rho <= 60; ++rho) {
    const double v = vb.c * rho + std::exp(exponent - rho * std::log(2.0));
    if (v < best) {
      best = v;
      vb.best_rho = rho;
    }
  }
  vb.raw = best;
  vb.bound = std::min(1.0, best);
  return vb;
}

}  // namespace tracelab
