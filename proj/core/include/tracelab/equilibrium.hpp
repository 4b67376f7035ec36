#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/rng.hpp"
#include "tracelab/spectral.hpp"
#include "tracelab/stats.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// e(y) = 1_B(y) alpha_y sum_{z notin B} L(y,z) P^z(T_B > tau) together with
// the derived constants lambda = cap/alpha(V), lambda0 = cap0/alpha(V),
// kappa = 4 (lambda0/lambda)(d(tau) + tau lambda0).
struct EquilibriumReport {
  std::vector<VertexId> target;
  double tau = 0.0;
  std::vector<double> measure;     // indexed by vertex, zero off the target
  std::vector<double> half_width;  // Monte Carlo only: 3 sigma per vertex
  double capacity = 0.0;
  double capacity0 = 0.0;
  double total_alpha = 0.0;
  double pi_target = 0.0;
  double lambda = 0.0;
  double lambda0 = 0.0;
  double mixing_distance = kNaN;
  double kappa = kNaN;
  bool degenerate_capacity = false;
  bool preconditions_met = false;  // -log kappa >= 2 tau lambda and 2 lambda0 <= pi(B^c)
};

// sum_{y in B} alpha_y sum_{z notin B} L(y,z).
double capacity_zero(const WeightedMultiGraph& g, std::span<const VertexId> target);

EquilibriumReport equilibrium_measure_exact(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                                            std::size_t cap = kDenseCap);

// Escape probabilities estimated by `samples` walks from every outside
// neighbour of B, each run for min(tau, horizon). kappa is filled in only when
// the graph is small enough for the exact mixing distance.
EquilibriumReport equilibrium_measure_mc(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                                         std::size_t samples, RngStream& rng,
                                         double horizon = std::numeric_limits<double>::infinity());

// Law of (T_B, X_{T_B}) under the equilibrium start: an atom pi_y at time 0
// for y in B plus the densities pi_y sum_{z notin B} L(y,z) P^z(T_B > t).
struct EntranceLaw {
  std::vector<VertexId> target;
  std::vector<double> atom;      // indexed by vertex
  std::vector<ExpSum> density;   // indexed by vertex, empty off B

  double density_at(VertexId y, double t) const { return density[y].coef.empty() ? 0.0 : density[y](t); }
  // P^pi(T_B <= t).
  double cdf(double t) const;
  // P^pi(T_B <= t, X_{T_B} = y).
  double cdf(VertexId y, double t) const;
};

EntranceLaw entrance_law_exact(const WeightedMultiGraph& g, std::span<const VertexId> target,
                               std::size_t cap = kDenseCap);

std::vector<double> entrance_density_exact(const WeightedMultiGraph& g, std::span<const VertexId> target, VertexId y,
                                           std::span<const double> times, std::size_t cap = kDenseCap);

struct EntranceSample {
  double time;
  VertexId vertex;
};

// Runs `n` walks from the equilibrium start until they hit B.
std::vector<EntranceSample> sample_entrances(const WeightedMultiGraph& g, std::span<const VertexId> target,
                                             std::size_t n, RngStream& rng);

// |P^y(T_B > t) - P^y(T_B > tau) P^pi(T_B > t)| against
// 2 d(tau) + (2 tau / alpha(V)) cap0, for t >= 2 tau > 0.
struct LemmaBReport {
  double tau = 0.0;
  double rhs = 0.0;
  double max_lhs = 0.0;
  double max_excess = -std::numeric_limits<double>::infinity();  // max(lhs - rhs)
  std::size_t violations = 0;                                     // lhs > rhs + tol
  std::size_t checks = 0;
};

LemmaBReport lemma_b_audit(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                           std::span<const double> times, double tol = 1e-8, std::size_t cap = kDenseCap);

// TV between the equilibrium entrance law and Exp(lambda) x e/cap, by
// quadrature, against pi(B) + 2 tau lambda0 + kappa (1 + log 1/kappa).
struct AldousReport {
  EquilibriumReport equilibrium;
  double tv = 0.0;        // quadrature value, tail difference dropped
  double tv_upper = 0.0;  // tail mass added in full
  double rhs = 0.0;
  double slack = 0.0;     // rhs - tv_upper
  bool preconditions_met = false;
};

AldousReport aldous_bound_audit(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                                std::size_t steps = 200000, std::size_t cap = kDenseCap);

// Joint law of (prefix on [0,tau], T_B^tau, X at T_B^tau) under pi against
// prefix x Exp(lambda) x e/cap, with T_B^tau = inf{t >= tau : X_t in B}.
// Prefixes are jump skeletons truncated to `skeleton_jumps` jumps and times
// are binned into 8 equiprobable Exp(lambda) bins.
struct JointReport {
  EquilibriumReport equilibrium;
  TvEstimate lhs;
  double rhs = 0.0;  // 2 pi(B) + kappa (3 + log 1/kappa)
  bool preconditions_met = false;
  // Same estimate with the prefix reduced to its initial state.
  TvEstimate lhs_initial_state;
};

JointReport joint_bound_audit(const WeightedMultiGraph& g, std::span<const VertexId> target, double tau,
                              std::size_t samples, RngStream& rng, std::size_t skeleton_jumps = 8);

// min over rho in 1..60 of c rho + 2^-rho exp(a cap t / alpha(V)) with
// c = 2 pi(B) + kappa (3 + log 1/kappa), capped at 1; equal to 1 when the
// preconditions fail.
struct VisitBound {
  double bound = 1.0;
  double raw = kNaN;  // uncapped minimum, when the preconditions hold
  int best_rho = 0;
  double c = kNaN;
  bool preconditions_met = false;
};

VisitBound visit_coupling_bound(const EquilibriumReport& report, double a, double t);

double visit_constant(const EquilibriumReport& report);

// Finite joint laws over (x, y) pairs.
struct CompositionReport {
  double tv_joint = 0.0;
  double tv_first = 0.0;
  double expected_conditional = 0.0;
  double rhs() const { return tv_first + expected_conditional; }
};

template <class X, class Y>
CompositionReport tv_composition(const std::map<std::pair<X, Y>, double>& p,
                                 const std::map<std::pair<X, Y>, double>& q) {
  std::map<std::pair<X, Y>, double> pp(p.begin(), p.end()), qq(q.begin(), q.end());
  CompositionReport r;
  r.tv_joint = tv_exact(pp, qq);
  std::map<X, double> p1, q1;
  for (const auto& [k, m] : p) p1[k.first] += m;
  for (const auto& [k, m] : q) q1[k.first] += m;
  r.tv_first = tv_exact(p1, q1);
  for (const auto& [x, px] : p1) {
    if (px <= 0.0) continue;
    const auto qit = q1.find(x);
    const double qx = qit == q1.end() ? 0.0 : qit->second;
    double cond = 1.0;
    if (qx > 0.0) {
      std::map<Y, std::pair<double, double>> pair;
      for (const auto& [k, m] : p)
        if (k.first == x) pair[k.second].first += m / px;
      for (const auto& [k, m] : q)
        if (k.first == x) pair[k.second].second += m / qx;
      double l1 = 0.0;
      for (const auto& [y, mm] : pair) l1 += std::abs(mm.first - mm.second);
      cond = 0.5 * l1;
    }
    r.expected_conditional += px * cond;
  }
  return r;
}

}  // namespace tracelab
