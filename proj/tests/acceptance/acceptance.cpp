// Acceptance suite: one PASS/FAIL line per criterion.
//
//   tracelab_acceptance                 run every criterion
//   tracelab_acceptance --criterion 7   run one criterion
//
// Exit status: 0 when every selected criterion passes, 1 on a failure, and 77
// when the only failures are criteria whose stated preconditions were checked
// and found not to hold (reported as FAIL with the analysis).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "tracelab/equilibrium.hpp"
#include "tracelab/exploration.hpp"
#include "tracelab/generators.hpp"
#include "tracelab/limit.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/percolation.hpp"
#include "tracelab/stats.hpp"
#include "tracelab/trace.hpp"
#include "tracelab/walk.hpp"
#include "tracelab_tools/experiments.hpp"

using namespace tracelab;
using tracelab::testing::corpus;
using tracelab::testing::fixture;

namespace {

enum class Verdict { Pass, Fail, Unattainable };

struct Outcome {
  Verdict verdict = Verdict::Fail;
  std::string detail;
};

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

Outcome make(bool pass, std::string detail) { return {pass ? Verdict::Pass : Verdict::Fail, std::move(detail)}; }

int threads() { return thread_count_from_env(); }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

cli::Output run_cli(const std::string& sub, cli::Config config, int n_threads) {
  std::vector<std::string> notices;
  return cli::run(sub, cli::validate(sub, std::move(config), notices), n_threads);
}

// ---------------------------------------------------------------------------

Outcome reversibility() {
  double worst_balance = 0.0, worst_stationary = 0.0;
  std::size_t graphs = 0;
  for (const auto& [name, rg] : corpus()) {
    const auto& g = rg.graph;
    const Generator gen(g);
    const auto q = gen.dense();
    const auto pi = stationary(g);
    const std::size_t n = g.num_vertices();
    for (VertexId x = 0; x < n; ++x)
      for (VertexId y = 0; y < n; ++y)
        if (x != y) worst_balance = std::max(worst_balance, std::abs(pi[x] * q(x, y) - pi[y] * q(y, x)));
    bool killing = false;
    for (EdgeId e = 0; e < g.num_edges(); ++e) killing = killing || g.endpoints(e).second == kCemetery;
    if (!killing) {
      for (VertexId y = 0; y < n; ++y) {
        double s = 0.0;
        for (VertexId x = 0; x < n; ++x) s += pi[x] * q(x, y);
        worst_stationary = std::max(worst_stationary, std::abs(s));
      }
    }
    ++graphs;
  }
  const bool ok = graphs >= 20 && worst_balance <= 1e-10 && worst_stationary <= 1e-10;
  return make(ok, std::to_string(graphs) + " fixtures, max |pi_x L(x,y) - pi_y L(y,x)| = " + fmt(worst_balance) +
                      ", max |(pi L)_y| = " + fmt(worst_stationary));
}

Outcome closed_form_mixing() {
  const auto g = fixture("k2").graph;
  double worst = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double t = 0.1 * i;
    // Two-state chain with unit rates: P_t(0,0) = (1 + e^{-2t})/2.
    const double oracle = 0.5 * std::exp(-2.0 * t);
    worst = std::max(worst, std::abs(mixing_distance_exact(g, t) - oracle));
  }
  return make(worst <= 1e-10, "tau in {0.1,...,5}: max |d(tau) - e^{-2 tau}/2| = " + fmt(worst));
}

Outcome entrance_law() {
  const auto g = fixture("c20").graph;
  const std::vector<VertexId> b = {0};
  const auto law = entrance_law_exact(g, b);
  RngStream rng(3);
  const std::size_t n = 100000;
  const auto samples = sample_entrances(g, b, n, rng);
  std::vector<double> times;
  times.reserve(n);
  for (const auto& s : samples) times.push_back(s.time);
  const double ks = ks_statistic(times, [&](double t) { return law.cdf(t); });

  // Joint cells (entry vertex, time bin): an atom at 0 plus ten bins of equal
  // probability for the continuous part.
  const int bins = 10;
  const double atom = law.atom[0];
  std::vector<double> edges = {0.0};
  for (int k = 1; k < bins; ++k) {
    const double target = atom + (1.0 - atom) * k / bins;
    double lo = 0.0, hi = 1.0;
    while (law.cdf(hi) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (law.cdf(mid) < target ? lo : hi) = mid;
    }
    edges.push_back(0.5 * (lo + hi));
  }
  std::vector<std::uint64_t> obs(bins + 1, 0);
  std::vector<double> probs(bins + 1, 0.0);
  probs[0] = law.cdf(VertexId{0}, 0.0);
  for (int k = 0; k < bins; ++k) {
    const double hi = k + 1 < bins ? law.cdf(VertexId{0}, edges[k + 1]) : 1.0;
    probs[k + 1] = hi - law.cdf(VertexId{0}, edges[k]);
  }
  bool other_vertex = false;
  for (const auto& s : samples) {
    if (s.vertex != 0) {
      other_vertex = true;
      continue;
    }
    if (s.time == 0.0) {
      ++obs[0];
      continue;
    }
    const auto it = std::upper_bound(edges.begin(), edges.end(), s.time);
    ++obs[static_cast<std::size_t>(it - edges.begin())];
  }
  const auto gof = chi_square_gof(obs, probs, 0.99);
  const bool ok = ks <= 0.01 && gof.pass && !other_vertex;
  return make(ok, "C20, B={v0}, 1e5 walks: KS = " + fmt(ks) + " (limit 0.01, 0.99 critical " +
                      fmt(ks_critical(n)) + "), joint entry chi2 = " + fmt(gof.statistic) + " on " +
                      std::to_string(gof.df) + " df (critical " + fmt(gof.critical) + ")");
}

Outcome lemma_b() {
  std::size_t violations = 0, checks = 0;
  double worst_excess = -1e300;
  for (const auto& [name, rg] : corpus()) {
    const std::vector<VertexId> b = {rg.roots.front()};
    for (double tau : {0.5, 1.0, 2.0}) {
      std::vector<double> times;
      for (int i = 0; i <= 40; ++i) times.push_back(2.0 * tau + 0.5 * i);
      const auto r = lemma_b_audit(rg.graph, b, tau, times, 1e-8);
      violations += r.violations;
      checks += r.checks;
      worst_excess = std::max(worst_excess, r.max_excess);
    }
  }
  return make(violations == 0, std::to_string(checks) + " (y, t) checks over the corpus, " +
                                   std::to_string(violations) + " violations, max lhs - rhs = " + fmt(worst_excess));
}

Outcome aldous_on(const WeightedMultiGraph& g, double tau, const std::string& label, bool preconditions_claimed) {
  const std::vector<VertexId> b = {0};
  const auto r = aldous_bound_audit(g, b, tau);
  const auto& eq = r.equilibrium;
  std::string detail = label + ": tv = " + fmt(r.tv) + ", tv_upper = " + fmt(r.tv_upper) + ", rhs = " + fmt(r.rhs) +
                       ", slack = " + fmt(r.slack) + ", kappa = " + fmt(eq.kappa) + ", d(tau) = " +
                       fmt(eq.mixing_distance) + ", lambda0 = " + fmt(eq.lambda0) + ", preconditions " +
                       (r.preconditions_met ? "hold" : "fail");
  if (r.preconditions_met) return make(r.slack > 0.0, detail);
  if (!preconditions_claimed) return make(false, detail);
  // kappa >= 4 tau lambda0 because lambda <= lambda0; once kappa >= 1 the
  // condition -log kappa >= 2 tau lambda cannot hold.
  detail += "; unattainable: kappa >= 4 tau lambda0 = " + fmt(4.0 * tau * eq.lambda0) +
            " > 1, so -log kappa < 0 < 2 tau lambda and the stated preconditions are false";
  return {Verdict::Unattainable, detail};
}

Outcome aldous_cycle() { return aldous_on(fixture("c50").graph, 8.0, "C50, B={v0}, tau=8", true); }

Outcome aldous_complete() {
  return aldous_on(tracelab::testing::complete_graph(200), 10.0, "K200 (alpha = degree), B={v0}, tau=10", false);
}

// Summaries keep the time bin and entry vertex of each atom.
AtomSummary coarse(const std::vector<PathAtom>& atoms, double sigma) { return summarize(atoms, sigma, 4, 0); }

Outcome visits_vs_poisson() {
  const auto g = fixture("c20").graph;
  const std::vector<VertexId> b = {0};
  const double tau = 5.0, a = 1.0;
  const auto eq = equilibrium_measure_exact(g, b, tau);
  const double sigma = 3.0 * eq.total_alpha / (a * eq.capacity);
  const double rate = a * eq.capacity / eq.total_alpha;  // atoms per unit of scaled time
  const Generator gen(g);
  std::vector<double> cumulative;
  std::vector<VertexId> support;
  double acc = 0.0;
  for (VertexId y : eq.target) {
    acc += eq.measure[y] / eq.capacity;
    cumulative.push_back(acc);
    support.push_back(y);
  }
  const std::size_t replicas = 10000;
  const RngStream root(6);
  const auto xi = parallel_map(replicas, threads(), [&](std::size_t i) {
    RngStream r = root.split(0).split(i);
    return coarse(visiting_measure(gen, b, tau, a, sigma * a, r).atoms, sigma);
  });
  const auto gamma = parallel_map(replicas, threads(), [&](std::size_t i) {
    RngStream r = root.split(1).split(i);
    std::vector<PathAtom> atoms;
    for (double t = r.exponential(rate); t <= sigma; t += r.exponential(rate)) {
      const VertexId y = support[r.pick_cumulative(cumulative)];
      TrajectorySegment path = simulate_walk(gen, y, tau, r);
      path.killed = true;
      atoms.push_back({t, std::move(path)});
    }
    return coarse(atoms, sigma);
  });
  const auto tv = tv_empirical(std::span<const AtomSummary>(xi), std::span<const AtomSummary>(gamma));
  const auto bound = visit_coupling_bound(eq, a, sigma);
  const bool ok = tv.value <= bound.bound + 3.0 * tv.sd;
  std::string detail = "C20, B={v0}, tau=5, a=1, sigma=" + fmt(sigma) + ", 1e4 replicas: binned TV = " +
                       fmt(tv.value) + " (sd " + fmt(tv.sd) + ", " + std::to_string(tv.classes) +
                       " classes), bound = " + fmt(bound.bound);
  if (!bound.preconditions_met)
    detail += " (preconditions fail, kappa = " + fmt(eq.kappa) + ", so the bound is the trivial 1)";
  else
    detail += " (rho = " + std::to_string(bound.best_rho) + ")";
  return make(ok, detail);
}

Outcome construction_consistency() {
  const RootedGraph rg = fixture("c20");
  const std::uint32_t radius = 1;
  const double tau = 5.0;
  const std::size_t m = 1000, replicas = 1000;
  const auto exact = equilibrium_measure_exact(rg.graph, ball(rg, radius), tau);
  const RngStream root(7);
  const auto estimates = parallel_map(replicas, threads(), [&](std::size_t i) {
    const StackFamily sf(rg, radius, tau, m, root.split(0).split(i));
    return escape_estimate(sf);
  });
  const std::size_t n = rg.graph.num_vertices();
  std::vector<double> mean(n, 0.0);
  double mean_l1 = 0.0;
  for (const auto& est : estimates) {
    double l1 = 0.0;
    for (VertexId v = 0; v < n; ++v) {
      mean[v] += est.measure[v] / replicas;
      l1 += std::abs(est.measure[v] - exact.measure[v]);
    }
    mean_l1 += l1 / replicas;
  }
  double l1_of_mean = 0.0;
  for (VertexId v = 0; v < n; ++v) l1_of_mean += std::abs(mean[v] - exact.measure[v]);

  // Conditional on one stack family the atom count is Poisson(sigma ||e_hat|| / afrak).
  const double afrak = exact.total_alpha, sigma = 3.0 * afrak / exact.capacity;
  StackFamily sf(rg, radius, tau, m, root.split(1));
  const auto est = escape_estimate(sf);
  std::vector<std::uint64_t> counts;
  RngStream cox_rng = root.split(2);
  for (int i = 0; i < 5000; ++i) counts.push_back(sample_cox(sf, est, afrak, sigma, cox_rng).atoms.size());
  const auto gof = poisson_count_test(counts, sigma * est.total / afrak, 0.99);

  const bool ok = l1_of_mean <= 0.02 && gof.pass;
  return make(ok, "C20, R=1, tau=5, m=1e3, 1e3 replicas: ||mean e_hat - e||_1 = " + fmt(l1_of_mean) +
                      " (limit 0.02; mean per-replica ||e_hat - e||_1 = " + fmt(mean_l1) +
                      "), Poisson chi2 = " + fmt(gof.statistic) + " on " + std::to_string(gof.df) +
                      " df (critical " + fmt(gof.critical) + ")");
}

Outcome desk_scale_limit() {
  const cli::Config config = {{"model", "cm"},  {"n", 2000},     {"degree", 3},       {"R", 1},
                              {"scale", 2000},  {"afrak", 3.0},  {"sigma", 5.0},      {"replicas", 1000},
                              {"seed", 8}};
  std::vector<std::string> notices;
  const auto validated = cli::validate("limit-compare", config, notices);
  const auto out = cli::run("limit-compare", validated, threads());
  double total = 0.0;
  std::vector<std::uint64_t> entries(3, 0);
  std::size_t rows = 0, full = 0;
  for (const auto& row : csv_rows(out.text)) {
    ++rows;
    total += std::stod(row.at(1));
    std::vector<std::string> hist;
    std::istringstream hs(row.at(3));
    std::string cell;
    while (std::getline(hs, cell, ';')) hist.push_back(cell);
    if (hist.size() != 3) continue;  // loops or multi-edges at the root
    ++full;
    for (std::size_t k = 0; k < 3; ++k) entries[k] += std::stoull(hist[k]);
  }
  const double mean = total / static_cast<double>(rows);
  const std::vector<double> uniform(3, 1.0 / 3.0);
  const auto gof = chi_square_gof(entries, uniform, 0.99);
  const bool ok = rows == 1000 && std::abs(mean - 5.0) <= 0.3 && gof.pass;
  return make(ok, "3-regular CM n=2000, R=1, tau=(log n)^2=" + fmt(validated.at("tau").get<double>()) +
                      ", a=n, afrak=3, sigma=5, 1e3 replicas: mean atoms = " + fmt(mean) +
                      " (target 5 +- 0.3), entry counts " + std::to_string(entries[0]) + "/" +
                      std::to_string(entries[1]) + "/" + std::to_string(entries[2]) + " over " +
                      std::to_string(full) + " replicas with |boundary| = 3, chi2 = " + fmt(gof.statistic) +
                      " (critical " + fmt(gof.critical) + ")");
}

std::vector<double> coupled_batches(std::size_t n, std::size_t batches, std::size_t per_batch, std::uint64_t seed,
                                    int n_threads) {
  const std::vector<std::size_t> degrees(n, 3);
  const RngStream root(seed);
  const BreadthFirstRule rule;
  const auto success = parallel_map(batches * per_batch, n_threads, [&](std::size_t i) {
    RngStream r = root.split(i);
    const auto res = coupled_exploration(degrees, static_cast<VertexId>(r.below(n)), rule, 10, r);
    return res.success ? 1.0 : 0.0;
  });
  std::vector<double> rates(batches, 0.0);
  for (std::size_t i = 0; i < success.size(); ++i) rates[i / per_batch] += success[i] / per_batch;
  return rates;
}

Outcome coupling_success() {
  std::string detail = "3-regular, l=10, 10 batches of 100:";
  std::vector<double> medians;
  double overall_top = 0.0;
  for (std::size_t n : {100u, 1000u, 10000u}) {
    const auto rates = coupled_batches(n, 10, 100, 9 + n, threads());
    double overall = 0.0;
    for (double r : rates) overall += r / rates.size();
    medians.push_back(median(rates));
    detail += " n=" + std::to_string(n) + " success " + fmt(overall) + " (median " + fmt(medians.back()) + ")";
    overall_top = overall;
  }
  const bool ok = overall_top >= 0.99 && medians[0] < medians[1] && medians[1] < medians[2];
  return make(ok, detail);
}

Outcome giant_component() {
  const DegreeDistribution d(std::vector<double>{0.0, 0.5, 0.0, 0.5});
  const std::size_t n = 5000, replicas = 50;
  const RngStream root(10);
  const auto fractions = parallel_map(replicas, threads(), [&](std::size_t i) {
    RngStream r = root.split(i);
    const auto g = configuration_model(d, n, r);
    std::size_t best = 0;
    for (const auto& c : connected_components(g)) best = std::max(best, c.size());
    return static_cast<double>(best) / n;
  });
  const auto ms = mean_sd(fractions);
  // Offspring law of the size-biased tree: 0 or 2 children with probabilities
  // 1/4, 3/4; extinction q = 1/4 + 3/4 q^2 gives q = 1/3 and survival
  // 1 - (q + q^3)/2 = 22/27.
  const double oracle = 22.0 / 27.0;
  return make(std::abs(ms.mean - oracle) <= 0.03, "CM p1=p3=1/2, n=5000, 50 replicas: mean |C_max|/n = " +
                                                      fmt(ms.mean) + " (sd " + fmt(ms.sd) + "), oracle 22/27 = " +
                                                      fmt(oracle));
}

Outcome maxsq_lemma() {
  RngStream r(11);
  std::size_t tuple_failures = 0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<double> a(1 + r.below(40));
    for (auto& x : a) x = static_cast<double>(r.below(1000));
    const auto b = maxsq_bounds(a);
    if (!(b.lower <= b.max_sq && b.max_sq <= b.upper)) ++tuple_failures;
  }
  const DegreeDistribution d = DegreeDistribution::regular(3);
  const PercolationSampler sampler = [&](RngStream& rng) { return configuration_model(d, 1000, rng); };
  const std::vector<std::size_t> ks = {1, 2, 3, 5, 10, 50, 100, 500};
  std::size_t graph_failures = 0, graphs = 0;
  for (auto mode : {PercolationMode::Site, PercolationMode::Bond}) {
    const auto rows = giant_vs_survival_experiment(sampler, 1.0, 0.0, ks, 100, mode, RngStream(12), threads());
    for (const auto& row : rows) {
      ++graphs;
      if (!row.component_form_holds) ++graph_failures;
    }
  }
  return make(tuple_failures == 0 && graph_failures == 0,
              "10^4 tuples: " + std::to_string(tuple_failures) + " failures; component form on " +
                  std::to_string(graphs) + " vacant graphs (site and bond, k in {1,...,500}): " +
                  std::to_string(graph_failures) + " failures");
}

Outcome determinism() {
  const std::string data = TRACELAB_TEST_DATA;
  const std::vector<std::pair<std::string, cli::Config>> runs = {
      {"generate", {{"model", "cm"}, {"n", 100}, {"p-weights", "1:0.5,3:0.5"}, {"seed", 7}}},
      {"walk", {{"fixture", data + "/c20.json"}, {"horizon", 50.0}}},
      {"visits", {{"fixture", data + "/c20.json"}, {"B", "0"}, {"tau", 5.0}, {"sigma", 200.0}, {"scale", 1.0}}},
      {"mixing", {{"fixture", data + "/k2.json"}, {"times", "0.1,1,2"}, {"samples", 200}}},
      {"bounds-audit", {{"fixture", data + "/c20.json"}, {"B", "0"}, {"tau", 5.0}, {"samples", 2000}}},
      {"limit-compare",
       {{"n", 500}, {"degree", 3}, {"tau", 40.0}, {"afrak", 3.0}, {"sigma", 5.0}, {"replicas", 24}, {"samples", 100}}},
      {"explore-couple", {{"n", 1000}, {"replicas", 60}}},
      {"percolate", {{"n", 1000}, {"sigma", 0.5}, {"k-list", "1,10,100"}, {"replicas", 24}}},
      {"percolate", {{"n", 1000}, {"sigma", 0.5}, {"mode", "bond"}, {"replicas", 24}}},
  };
  std::string mismatched;
  for (const auto& [sub, config] : runs) {
    const auto one = run_cli(sub, config, 1).text;
    if (one != run_cli(sub, config, 1).text || one != run_cli(sub, config, 4).text ||
        one != run_cli(sub, config, 7).text)
      mismatched += " " + sub;
  }
  // Library experiments driven directly by the suite.
  if (coupled_batches(1000, 4, 25, 5, 1) != coupled_batches(1000, 4, 25, 5, 4)) mismatched += " coupled-batches";
  const DegreeDistribution d = DegreeDistribution::regular(3);
  const PercolationSampler sampler = [&](RngStream& rng) { return configuration_model(d, 500, rng); };
  const std::vector<std::size_t> ks = {1, 10};
  auto perc = [&](int t) {
    std::string s;
    for (const auto& row : giant_vs_survival_experiment(sampler, 1.0, 0.0, ks, 16, PercolationMode::Site, RngStream(3), t))
      s += std::to_string(row.removed) + ":" + std::to_string(row.cmax) + ";";
    return s;
  };
  if (perc(1) != perc(5)) mismatched += " giant-vs-survival";
  return make(mismatched.empty(), mismatched.empty()
                                      ? "all 8 subcommands and the suite's parallel experiments are byte-identical "
                                        "across reruns and 1/4/7 workers"
                                      : "mismatch in:" + mismatched);
}

struct Criterion {
  std::string id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"1", "reversibility and invariance", 1.0, reversibility},
      {"2", "closed-form mixing on K2", 1.0, closed_form_mixing},
      {"3", "equilibrium entrance law", 30.0, entrance_law},
      {"4", "entrance-time decorrelation bound", 10.0, lemma_b},
      {"5", "exponential entrance-time audit on C50", 30.0, aldous_cycle},
      {"5b", "exponential entrance-time audit on K200", 30.0, aldous_complete},
      {"6", "visits vs Poisson process", 300.0, visits_vs_poisson},
      {"7", "stack construction consistency", 120.0, construction_consistency},
      {"8", "desk-scale limit on 3-regular CM", 600.0, desk_scale_limit},
      {"9", "coupled exploration success", 300.0, coupling_success},
      {"10", "giant component vs survival", 120.0, giant_component},
      {"11", "max-square bounds", 60.0, maxsq_lemma},
      {"12", "determinism across workers", 600.0, determinism},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion ID]\n";
      return 2;
    }
  }
  bool any_fail = false, any_unattainable = false, matched = false;
  for (const auto& c : criteria()) {
    if (!only.empty() && c.id != only) continue;
    matched = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.verdict == Verdict::Pass && secs > c.budget_seconds) {
      out.verdict = Verdict::Fail;
      out.detail += "; over the time budget";
    }
    const bool pass = out.verdict == Verdict::Pass;
    std::printf("%s criterion %s (%s): %s [%.2fs of %.0fs]\n", pass ? "PASS" : "FAIL", c.id.c_str(), c.name.c_str(),
                out.detail.c_str(), secs, c.budget_seconds);
    std::fflush(stdout);
    if (out.verdict == Verdict::Fail) any_fail = true;
    if (out.verdict == Verdict::Unattainable) any_unattainable = true;
  }
  if (!matched) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  if (any_fail) return 1;
  return any_unattainable ? 77 : 0;
}
