#include "tracelab_tools/experiments.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "tracelab/equilibrium.hpp"
#include "tracelab/error.hpp"
#include "tracelab/exploration.hpp"
#include "tracelab/fixture_io.hpp"
#include "tracelab/generators.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/percolation.hpp"
#include "tracelab/trace.hpp"
#include "tracelab/version.hpp"
#include "tracelab/walk.hpp"

namespace tracelab::cli {

namespace {

enum class Kind { Str, Int, Num };

struct KeySpec {
  const char* name;
  Kind kind;
};

constexpr KeySpec kKeys[] = {
    {"model", Kind::Str},   {"n", Kind::Int},         {"p-weights", Kind::Str}, {"degree", Kind::Int},
    {"m", Kind::Int},       {"fixture", Kind::Str},   {"B", Kind::Str},         {"R", Kind::Int},
    {"tau", Kind::Num},     {"scale", Kind::Num},     {"afrak", Kind::Num},     {"sigma", Kind::Num},
    {"horizon", Kind::Num}, {"ell", Kind::Int},       {"rule", Kind::Str},      {"replicas", Kind::Int},
    {"seed", Kind::Int},    {"mode", Kind::Str},      {"k-list", Kind::Str},    {"times", Kind::Str},
    {"samples", Kind::Int}, {"start", Kind::Str},     {"depth", Kind::Int},     {"out", Kind::Str},
    {"degrees-file", Kind::Str},
};

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
  fail(ErrorCode::ConfigError, field + ": " + msg);
}

const KeySpec* find_key(const std::string& name) {
  for (const auto& k : kKeys)
    if (name == k.name) return &k;
  return nullptr;
}

double num(const Config& c, const char* key) { return c.at(key).get<double>(); }
std::int64_t integer(const Config& c, const char* key) { return c.at(key).get<std::int64_t>(); }
std::string str(const Config& c, const char* key) { return c.at(key).get<std::string>(); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// "1:0.5,3:0.5" -> DegreeDistribution.
DegreeDistribution parse_weights(const std::string& s) {
  std::vector<double> probs;
  for (const auto& item : split(s, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) bad("p-weights", "expected k:w pairs, got '" + item + "'");
    std::size_t k = 0;
    double w = 0.0;
    try {
      k = std::stoul(item.substr(0, colon));
      w = std::stod(item.substr(colon + 1));
    } catch (const std::exception&) {
      bad("p-weights", "cannot parse '" + item + "'");
    }
    if (!(w >= 0.0)) bad("p-weights", "negative weight");
    if (probs.size() <= k) probs.resize(k + 1, 0.0);
    probs[k] += w;
  }
  double total = 0.0;
  for (double p : probs) total += p;
  if (!(total > 0.0)) bad("p-weights", "weights sum to zero");
  for (double& p : probs) p /= total;
  return DegreeDistribution(std::move(probs));
}

DegreeDistribution degree_law(const Config& c) {
  if (c.contains("p-weights")) return parse_weights(str(c, "p-weights"));
  return DegreeDistribution::regular(static_cast<std::size_t>(integer(c, "degree")));
}

std::vector<std::size_t> parse_sizes(const std::string& field, const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& item : split(s, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      bad(field, "cannot parse '" + item + "'");
    }
  }
  if (out.empty()) bad(field, "empty list");
  return out;
}

std::vector<double> parse_numbers(const std::string& field, const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      bad(field, "cannot parse '" + item + "'");
    }
  }
  if (out.empty()) bad(field, "empty list");
  return out;
}

Label parse_vertex_label(const std::string& field, std::string s) {
  if (!s.empty() && s.front() == 'v') s.erase(0, 1);
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    bad(field, "cannot parse vertex '" + s + "'");
  }
}

VertexId resolve_vertex(const WeightedMultiGraph& g, const std::string& field, const std::string& s) {
  const auto id = g.find_vertex(parse_vertex_label(field, s));
  if (!id) bad(field, "no vertex '" + s + "' in the graph");
  return *id;
}

std::vector<std::size_t> read_degrees(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("degrees-file", "cannot open " + path);
  std::vector<std::size_t> degrees;
  long long d = 0;
  while (in >> d) {
    if (d < 0) bad("degrees-file", "negative degree");
    degrees.push_back(static_cast<std::size_t>(d));
  }
  if (!in.eof()) bad("degrees-file", "cannot parse " + path);
  if (degrees.empty()) bad("degrees-file", "no degrees in " + path);
  std::size_t total = 0;
  for (std::size_t x : degrees) total += x;
  if (total % 2) fail(ErrorCode::OddDegreeSum, "degree sum of " + path + " is odd");
  return degrees;
}

// Samples a graph of the configured model together with its root: the
// fixture roots (or vertex 0), the tree root, or a uniform vertex.
RootedGraph sample_rooted(const Config& c, RngStream& rng) {
  const std::string model = str(c, "model");
  if (model == "fixture") {
    RootedGraph rg = read_fixture(str(c, "fixture"));
    if (rg.roots.empty()) rg.roots.push_back(0);
    return rg;
  }
  if (model == "gwp") {
    const DegreeDistribution d = degree_law(c);
    GwpTreeOptions opts;
    opts.max_depth = static_cast<std::uint32_t>(integer(c, "depth"));
    return sample_gwp_tree(d, size_bias(d), rng, opts).tree;
  }
  RngStream graph_rng = rng.split(0);
  RngStream root_rng = rng.split(1);
  const auto n = c.contains("n") ? static_cast<std::size_t>(integer(c, "n")) : 0;
  RootedGraph rg;
  if (model == "cm" && c.contains("degrees-file"))
    rg.graph = pair_half_edges(read_degrees(str(c, "degrees-file")), graph_rng);
  else if (model == "cm")
    rg.graph = configuration_model(degree_law(c), n, graph_rng);
  else
    rg.graph = erdos_renyi_gnm(n, static_cast<std::uint64_t>(integer(c, "m")), graph_rng);
  rg.roots.push_back(static_cast<VertexId>(root_rng.below(rg.graph.num_vertices())));
  return rg;
}

std::vector<VertexId> target_set(const Config& c, const RootedGraph& rg) {
  if (c.contains("B")) {
    std::vector<VertexId> b;
    for (const auto& item : split(str(c, "B"), ',')) b.push_back(resolve_vertex(rg.graph, "B", item));
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
  }
  return ball(rg, static_cast<std::uint32_t>(integer(c, "R")));
}

std::string header(const Config& c, const std::string& columns) {
  return "# tracelab " + std::string(kVersion) + " config=" + config_hash(c) + "\n" + columns + "\n";
}

std::string label_of(const WeightedMultiGraph& g, VertexId v) {
  return v == kCemetery ? "CEMETERY" : std::to_string(g.vertex_label(v));
}

// ---------------------------------------------------------------- generate

Output run_generate(const Config& c) {
  RngStream rng(static_cast<std::uint64_t>(integer(c, "seed")));
  const RootedGraph rg = sample_rooted(c, rng);
  return {fixture_to_json(rg) + "\n", 0};
}

// -------------------------------------------------------------------- walk

Output run_walk(const Config& c) {
  RngStream rng(static_cast<std::uint64_t>(integer(c, "seed")));
  RngStream graph_rng = rng.split(0), walk_rng = rng.split(1);
  const RootedGraph rg = sample_rooted(c, graph_rng);
  const Generator gen(rg.graph);
  const VertexId start =
      c.contains("start") ? resolve_vertex(rg.graph, "start", str(c, "start")) : gen.sample_stationary(walk_rng);
  const TrajectorySegment path = simulate_walk(gen, start, num(c, "horizon"), walk_rng);
  std::ostringstream out;
  write_trajectory_jsonl(rg.graph, path, out);
  return {out.str(), 0};
}

// ------------------------------------------------------------------ visits

Output run_visits(const Config& c) {
  RngStream rng(static_cast<std::uint64_t>(integer(c, "seed")));
  RngStream graph_rng = rng.split(0), walk_rng = rng.split(1);
  const RootedGraph rg = sample_rooted(c, graph_rng);
  const auto target = target_set(c, rg);
  const double a = num(c, "scale");
  const double horizon = c.contains("sigma") ? num(c, "sigma") * a : num(c, "horizon");
  const Generator gen(rg.graph);
  const VisitingMeasure xi = visiting_measure(gen, target, num(c, "tau"), a, horizon, walk_rng);
  std::string out = header(c, "k,T_k,T_k/a,entry_vertex,path_len,path_states");
  for (std::size_t k = 0; k < xi.atoms.size(); ++k) {
    const auto& atom = xi.atoms[k];
    std::string states = label_of(rg.graph, atom.path.start);
    for (const auto& j : atom.path.jumps) states += ";" + label_of(rg.graph, j.to);
    out += std::to_string(k + 1) + "," + fmt(atom.time * a) + "," + fmt(atom.time) + "," +
           label_of(rg.graph, atom.path.start) + "," + std::to_string(atom.path.jumps.size()) + "," + states + "\n";
  }
  return {out, 0};
}

// ------------------------------------------------------------------ mixing

Output run_mixing(const Config& c) {
  RngStream rng(static_cast<std::uint64_t>(integer(c, "seed")));
  RngStream graph_rng = rng.split(0), mc_rng = rng.split(1);
  const RootedGraph rg = sample_rooted(c, graph_rng);
  const auto times = parse_numbers("times", str(c, "times"));
  const auto samples = static_cast<std::size_t>(integer(c, "samples"));
  std::string out = header(c, "t,d_exact,d_mc,half_width");
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const double exact = rg.graph.num_vertices() <= kDenseCap ? mixing_distance_exact(rg.graph, t) : kNaN;
    McEstimate mc{kNaN, kNaN};
    if (samples > 0) {
      RngStream r = mc_rng.split(i);
      mc = mixing_distance_mc(rg.graph, t, samples, r);
    }
    out += fmt(t) + "," + fmt(exact) + "," + fmt(mc.value) + "," + fmt(mc.half_width) + "\n";
  }
  return {out, 0};
}

// ------------------------------------------------------------ bounds-audit

Output run_bounds_audit(const Config& c) {
  RngStream rng(static_cast<std::uint64_t>(integer(c, "seed")));
  RngStream graph_rng = rng.split(0), mc_rng = rng.split(1);
  const RootedGraph rg = sample_rooted(c, graph_rng);
  const auto target = target_set(c, rg);
  const double tau = num(c, "tau");
  const auto samples = static_cast<std::size_t>(integer(c, "samples"));
  std::string out = header(c, "name,lhs,rhs,slack,preconditions_met,params");
  int status = 0;
  auto row = [&](const std::string& name, double lhs, double rhs, double slack, bool pre, const std::string& params) {
    out += name + "," + fmt(lhs) + "," + fmt(rhs) + "," + fmt(slack) + "," + (pre ? "1" : "0") + "," + params + "\n";
  };

  std::vector<double> times;
  for (double t = 2.0 * tau; t <= 2.0 * tau + 20.0 + 1e-9; t += 0.5) times.push_back(t);
  const LemmaBReport lb = lemma_b_audit(rg.graph, target, tau, times);
  row("lemma_b", lb.max_lhs, lb.rhs, lb.rhs - lb.max_lhs, true, "tau=" + fmt(tau) + ";t=2tau..2tau+20");
  if (lb.violations > 0) status = 3;

  const AldousReport al = aldous_bound_audit(rg.graph, target, tau);
  const auto& eq = al.equilibrium;
  row("aldous", al.tv_upper, al.rhs, al.slack, al.preconditions_met,
      "tau=" + fmt(tau) + ";kappa=" + fmt(eq.kappa) + ";lambda=" + fmt(eq.lambda) + ";lambda0=" + fmt(eq.lambda0));
  if (al.preconditions_met && al.slack < -1e-8) status = 3;

  if (samples > 0) {
    const JointReport jr = joint_bound_audit(rg.graph, target, tau, samples, mc_rng);
    row("joint", jr.lhs.value, jr.rhs, jr.rhs - jr.lhs.value, jr.preconditions_met,
        "tau=" + fmt(tau) + ";samples=" + std::to_string(samples) + ";sd=" + fmt(jr.lhs.sd));
    if (jr.preconditions_met && jr.lhs.value - 3.0 * jr.lhs.sd > jr.rhs) status = 3;
  }

  const VisitBound vb = visit_coupling_bound(eq, num(c, "scale"), num(c, "sigma"));
  row("visit_bound", kNaN, vb.bound, kNaN, vb.preconditions_met,
      "a=" + fmt(num(c, "scale")) + ";sigma=" + fmt(num(c, "sigma")) + ";rho=" + std::to_string(vb.best_rho) +
          ";c=" + fmt(vb.c));
  return {out, status};
}

// ----------------------------------------------------------- limit-compare

struct LimitRow {
  std::size_t atoms = 0;
  double first = kNaN;
  std::vector<std::uint64_t> histogram;
  double tv = kNaN;
  double cap = kNaN;
};

Output run_limit_compare(const Config& c, int threads) {
  const RngStream root(static_cast<std::uint64_t>(integer(c, "seed")));
  const auto replicas = static_cast<std::size_t>(integer(c, "replicas"));
  const auto radius = static_cast<std::uint32_t>(integer(c, "R"));
  const double tau = num(c, "tau"), a = num(c, "scale"), sigma = num(c, "sigma");
  const auto samples = static_cast<std::size_t>(integer(c, "samples"));
  const auto rows = parallel_map(replicas, threads, [&](std::size_t i) {
    RngStream r = root.split(i);
    RngStream graph_rng = r.split(0), walk_rng = r.split(1), eq_rng = r.split(2);
    const RootedGraph rg = sample_rooted(c, graph_rng);
    const auto target = target_set(c, rg);
    const Generator gen(rg.graph);
    const VisitingMeasure xi = visiting_measure(gen, target, tau, a, sigma * a, walk_rng);
    LimitRow row;
    row.atoms = xi.atoms.size();
    if (!xi.atoms.empty()) row.first = xi.atoms.front().time;
    // Entry histogram over the vertices at distance R, in vertex order.
    const auto rim = boundary(rg, radius);
    std::map<VertexId, std::size_t> rank;
    for (std::size_t k = 0; k < rim.size(); ++k) rank[rim[k]] = k;
    row.histogram.assign(rim.size(), 0);
    std::vector<VertexId> entries;
    for (const auto& atom : xi.atoms) {
      const auto it = rank.find(atom.path.start);
      if (it != rank.end()) ++row.histogram[it->second];
      entries.push_back(atom.path.start);
    }
    if (samples > 0) {
      const EquilibriumReport eq = equilibrium_measure_mc(rg.graph, target, tau, samples, eq_rng);
      row.cap = eq.capacity;
      if (!entries.empty() && eq.capacity > 0.0) {
        FiniteDist<VertexId> law;
        for (VertexId y : eq.target)
          if (eq.measure[y] > 0.0) law[y] = eq.measure[y] / eq.capacity;
        double total = 0.0;
        for (const auto& [y, p] : law) total += p;
        for (auto& [y, p] : law) p /= total;
        row.tv = tv_empirical_vs(std::span<const VertexId>(entries), law).value;
      }
    }
    return row;
  });
  std::string out = header(c, "replica,atom_count,first_atom_time,entry_vertex_histogram,tv_summary,cap_estimate");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    std::string hist;
    for (std::size_t k = 0; k < row.histogram.size(); ++k) hist += (k ? ";" : "") + std::to_string(row.histogram[k]);
    out += std::to_string(i) + "," + std::to_string(row.atoms) + "," + fmt(row.first) + "," + hist + "," +
           fmt(row.tv) + "," + fmt(row.cap) + "\n";
  }
  return {out, 0};
}

// ---------------------------------------------------------- explore-couple

std::unique_ptr<ExplorationRule> make_rule(const std::string& name) {
  if (name == "bfs") return std::make_unique<BreadthFirstRule>();
  if (name == "markov") return std::make_unique<MarkovRule>();
  bad("rule", "must be bfs or markov");
}

Output run_explore_couple(const Config& c, int threads) {
  const RngStream root(static_cast<std::uint64_t>(integer(c, "seed")));
  const auto replicas = static_cast<std::size_t>(integer(c, "replicas"));
  const auto n = static_cast<std::size_t>(integer(c, "n"));
  const auto ell = static_cast<std::size_t>(integer(c, "ell"));
  const DegreeDistribution law = degree_law(c);
  const auto rule = make_rule(str(c, "rule"));
  struct Row {
    bool success;
    CoupledResult::Failure failure;
    std::size_t disclosed;
  };
  const auto rows = parallel_map(replicas, threads, [&](std::size_t i) {
    RngStream r = root.split(i);
    RngStream deg_rng = r.split(0), root_rng = r.split(1), run_rng = r.split(2);
    const auto degrees = sample_degree_sequence(law, n, deg_rng);
    const auto o = static_cast<VertexId>(root_rng.below(n));
    const CoupledResult res = coupled_exploration(degrees, o, *rule, ell, run_rng);
    return Row{res.success, res.failure, res.graph.num_vertices()};
  });
  std::string out = header(c, "replica,success,failure_cause,disclosed_size");
  for (std::size_t i = 0; i < rows.size(); ++i)
    out += std::to_string(i) + "," + (rows[i].success ? "1" : "0") + "," + to_string(rows[i].failure) + "," +
           std::to_string(rows[i].disclosed) + "\n";
  return {out, 0};
}

// --------------------------------------------------------------- percolate

Output run_percolate(const Config& c, int threads) {
  const RngStream root(static_cast<std::uint64_t>(integer(c, "seed")));
  const auto ks = parse_sizes("k-list", str(c, "k-list"));
  const PercolationMode mode = parse_percolation_mode(str(c, "mode"));
  const PercolationSampler sampler = [&](RngStream& rng) { return sample_rooted(c, rng).graph; };
  const double a = c.contains("scale") ? num(c, "scale") : 0.0;
  const auto rows = giant_vs_survival_experiment(sampler, num(c, "sigma"), a, ks,
                                                 static_cast<std::size_t>(integer(c, "replicas")), mode, root, threads);
  std::string cols = "replica,n,removed,cmax";
  for (std::size_t k : ks) cols += ",N_" + std::to_string(k);
  cols += ",pair_estimate";
  std::string out = header(c, cols);
  for (const auto& r : rows) {
    out += std::to_string(r.replica) + "," + std::to_string(r.n) + "," + std::to_string(r.removed) + "," +
           std::to_string(r.cmax);
    for (double x : r.n_k) out += "," + fmt(x);
    out += "," + fmt(r.pair_estimate) + "\n";
  }
  return {out, 0};
}

void require(const Config& c, const char* key) {
  if (!c.contains(key)) bad(key, "required");
}

void require_positive(const Config& c, const char* key) {
  require(c, key);
  if (!(num(c, key) > 0.0)) bad(key, "must be positive");
}

void require_nonnegative(const Config& c, const char* key) {
  require(c, key);
  if (!(num(c, key) >= 0.0)) bad(key, "must be nonnegative");
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"generate",      "walk",           "visits",   "mixing", "bounds-audit",
                                                 "limit-compare", "explore-couple", "percolate"};
  return names;
}

Config validate(const std::string& sub, Config c, std::vector<std::string>& notices) {
  if (std::find(subcommands().begin(), subcommands().end(), sub) == subcommands().end())
    bad("subcommand", "unknown '" + sub + "'");
  if (!c.is_object()) bad("config", "must be a JSON object");

  // Type normalisation: numbers may arrive as strings from flags.
  for (auto it = c.begin(); it != c.end(); ++it) {
    const KeySpec* spec = find_key(it.key());
    if (!spec) bad(it.key(), "unknown field");
    auto& v = it.value();
    if (spec->kind == Kind::Str) {
      if (v.is_number()) v = v.dump();
      if (!v.is_string()) bad(it.key(), "expected a string");
      continue;
    }
    if (v.is_string()) {
      try {
        std::size_t used = 0;
        const std::string s = v.get<std::string>();
        if (spec->kind == Kind::Int) {
          const long long x = std::stoll(s, &used);
          if (used != s.size()) throw std::invalid_argument(s);
          v = x;
        } else {
          const double x = std::stod(s, &used);
          if (used != s.size()) throw std::invalid_argument(s);
          v = x;
        }
      } catch (const std::exception&) {
        bad(it.key(), "expected a number");
      }
    }
    if (!v.is_number()) bad(it.key(), "expected a number");
    if (spec->kind == Kind::Int) {
      const double x = v.get<double>();
      if (x != std::floor(x) || x < 0) bad(it.key(), "expected a nonnegative integer");
      v = static_cast<std::int64_t>(x);
    }
  }

  if (!c.contains("seed")) c["seed"] = 1;
  if (!c.contains("model")) c["model"] = c.contains("fixture") ? "fixture" : "cm";
  const std::string model = str(c, "model");
  if (model != "cm" && model != "er" && model != "gwp" && model != "fixture")
    bad("model", "must be cm, er, gwp or fixture");
  if (model == "fixture") require(c, "fixture");
  if (model == "cm" && c.contains("degrees-file") && !c.contains("n"))
    c["n"] = read_degrees(str(c, "degrees-file")).size();
  if (model == "cm" || model == "er") {
    require_positive(c, "n");
    if (model == "er") require(c, "m");
  }
  if ((model == "cm" || model == "gwp") && !c.contains("p-weights") && !c.contains("degree") &&
      !c.contains("degrees-file")) {
    c["degree"] = 3;
    notices.push_back("no degree law given; using 3-regular");
  }
  if (model == "gwp" && !c.contains("depth")) c["depth"] = 12;
  if (c.contains("p-weights")) parse_weights(str(c, "p-weights"));
  if (c.contains("degree") && integer(c, "degree") < 1) bad("degree", "must be at least 1");
  if (c.contains("sigma")) require_nonnegative(c, "sigma");
  if (c.contains("tau")) require_positive(c, "tau");
  if (c.contains("scale")) require_positive(c, "scale");
  if (c.contains("afrak")) require_positive(c, "afrak");
  if (c.contains("horizon")) require_positive(c, "horizon");
  if (c.contains("replicas") && integer(c, "replicas") < 1) bad("replicas", "must be positive");

  const bool sized = model == "cm" || model == "er";
  const double n = sized ? num(c, "n") : 0.0;

  if (sub == "walk") {
    require_positive(c, "horizon");
  } else if (sub == "visits") {
    if (!c.contains("B") && !c.contains("R")) c["R"] = 1;
    require_positive(c, "tau");
    if (!c.contains("scale")) c["scale"] = sized ? n : 1.0;
    if (!c.contains("sigma") && !c.contains("horizon")) bad("sigma", "either sigma or horizon is required");
  } else if (sub == "mixing") {
    require(c, "times");
    parse_numbers("times", str(c, "times"));
    if (!c.contains("samples")) c["samples"] = 0;
  } else if (sub == "bounds-audit") {
    if (!c.contains("B") && !c.contains("R")) c["R"] = 0;
    require_positive(c, "tau");
    if (!c.contains("samples")) c["samples"] = 0;
    if (!c.contains("scale")) c["scale"] = 1.0;
    if (!c.contains("sigma")) c["sigma"] = 1.0;
  } else if (sub == "limit-compare") {
    if (!c.contains("R")) c["R"] = 1;
    if (!c.contains("replicas")) c["replicas"] = 100;
    if (!c.contains("tau")) {
      if (!sized) bad("tau", "required for this model");
      c["tau"] = std::pow(std::log(n), 2.0);
      notices.push_back("tau defaults to (log n)^2 = " + fmt(num(c, "tau")));
    }
    if (!c.contains("scale")) {
      if (!sized) bad("scale", "required for this model");
      c["scale"] = n;
    }
    if (!c.contains("afrak")) {
      if (model != "cm") bad("afrak", "required for this model");
      c["afrak"] = degree_law(c).mean();
      notices.push_back("afrak defaults to E[D] = " + fmt(num(c, "afrak")));
    }
    if (!c.contains("sigma")) c["sigma"] = 1.0;
    if (!c.contains("samples")) c["samples"] = 0;
    if (sized && num(c, "tau") <= std::log(n))
      notices.push_back("warning: tau <= log n, below the mixing-time scale");
  } else if (sub == "explore-couple") {
    if (model != "cm") bad("model", "explore-couple needs the cm model");
    if (!c.contains("ell")) {
      c["ell"] = ell_schedule(3.0, static_cast<std::size_t>(n)).ell;
      notices.push_back("ell defaults to the schedule value " + std::to_string(integer(c, "ell")));
    }
    if (!c.contains("rule")) c["rule"] = "bfs";
    make_rule(str(c, "rule"));
    if (!c.contains("replicas")) c["replicas"] = 100;
  } else if (sub == "percolate") {
    if (!c.contains("sigma")) c["sigma"] = 0.0;
    if (!c.contains("mode")) c["mode"] = "site";
    parse_percolation_mode(str(c, "mode"));
    if (!c.contains("k-list")) c["k-list"] = "1";
    parse_sizes("k-list", str(c, "k-list"));
    if (!c.contains("replicas")) c["replicas"] = 10;
  }
  if (c.contains("out")) c.erase("out");
  return c;
}

std::string config_hash(const Config& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

Output run(const std::string& sub, const Config& c, int threads) {
  if (sub == "generate") return run_generate(c);
  if (sub == "walk") return run_walk(c);
  if (sub == "visits") return run_visits(c);
  if (sub == "mixing") return run_mixing(c);
  if (sub == "bounds-audit") return run_bounds_audit(c);
  if (sub == "limit-compare") return run_limit_compare(c, threads);
  if (sub == "explore-couple") return run_explore_couple(c, threads);
  if (sub == "percolate") return run_percolate(c, threads);
  bad("subcommand", "unknown '" + sub + "'");
}

}  // namespace tracelab::cli
