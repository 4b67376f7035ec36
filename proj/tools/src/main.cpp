#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tracelab/error.hpp"
#include "tracelab/parallel.hpp"
#include "tracelab/version.hpp"
#include "tracelab_tools/experiments.hpp"

namespace {

struct Flag {
  const char* name;
  const char* help;
};

// Model flags shared by every subcommand.
const Flag kModelFlags[] = {
    {"model", "cm | er | gwp | fixture"},
    {"fixture", "graph fixture JSON"},
    {"n", "number of vertices"},
    {"p-weights", "degree law as k:w pairs, e.g. 1:0.5,3:0.5"},
    {"degree", "regular degree"},
    {"degrees-file", "whitespace-separated degree sequence"},
    {"m", "edge count for er"},
    {"depth", "truncation depth for gwp"},
    {"seed", "master seed"},
};

const std::map<std::string, std::vector<Flag>> kSubFlags = {
    {"generate", {}},
    {"walk", {{"start", "start vertex label (default: stationary)"}, {"horizon", "time horizon"}}},
    {"visits",
     {{"B", "target vertices, e.g. v0,v3"},
      {"R", "radius of the target ball around the root"},
      {"tau", "refractory period"},
      {"scale", "time scale a"},
      {"horizon", "real-time horizon"},
      {"sigma", "horizon in units of a"}}},
    {"mixing", {{"times", "comma-separated times"}, {"samples", "Monte Carlo samples per vertex (0: exact only)"}}},
    {"bounds-audit",
     {{"B", "target vertices, e.g. v0"},
      {"R", "radius of the target ball"},
      {"tau", "refractory period"},
      {"samples", "Monte Carlo samples for the joint audit (0: skip)"},
      {"scale", "time scale a for the visit bound"},
      {"sigma", "time window for the visit bound"}}},
    {"limit-compare",
     {{"B", "target vertices"},
      {"R", "radius"},
      {"tau", "refractory period (default (log n)^2)"},
      {"scale", "time scale a (default n)"},
      {"afrak", "limit scale constant (default E[D])"},
      {"sigma", "time window"},
      {"replicas", "replica count"},
      {"samples", "escape samples per outside neighbour for the entry-law TV (0: skip)"}}},
    {"explore-couple",
     {{"rule", "bfs | markov"}, {"ell", "exploration steps"}, {"replicas", "replica count"}}},
    {"percolate",
     {{"sigma", "time window"},
      {"scale", "time scale a (default n)"},
      {"mode", "site | bond"},
      {"k-list", "comma-separated component size thresholds"},
      {"replicas", "replica count"}}},
};

const std::map<std::string, std::string> kSubHelp = {
    {"generate", "sample a graph and print it as fixture JSON"},
    {"walk", "simulate a walk and print its jumps as JSON lines"},
    {"visits", "print the visiting measure of one walk as CSV"},
    {"mixing", "exact (and optionally Monte Carlo) mixing distance"},
    {"bounds-audit", "check the entrance-time bounds on one graph"},
    {"limit-compare", "visiting-measure atoms against the limit process"},
    {"explore-couple", "coupled configuration-model and tree explorations"},
    {"percolate", "vacant-set component statistics"},
};

}  // namespace

int main(int argc, char** argv) {
  using tracelab::cli::Config;
  CLI::App app{"tracelab: traces of reversible random walks on weighted multigraphs"};
  app.set_version_flag("--version", std::string(tracelab::kVersion));
  app.require_subcommand(1);

  std::string config_path, out_path;
  int threads = 0;
  std::map<std::string, std::map<std::string, std::string>> values;
  for (const auto& sub_name : tracelab::cli::subcommands()) {
    CLI::App* sub = app.add_subcommand(sub_name, kSubHelp.at(sub_name));
    sub->add_option("--config", config_path, "JSON config file; flags override its fields");
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--threads", threads, "worker threads (default: TRACE_LAB_THREADS or hardware)");
    auto& slot = values[sub_name];
    for (const auto& f : kModelFlags) sub->add_option(std::string("--") + f.name, slot[f.name], f.help);
    for (const auto& f : kSubFlags.at(sub_name)) sub->add_option(std::string("--") + f.name, slot[f.name], f.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string sub_name = app.get_subcommands().front()->get_name();
  const CLI::App* sub = app.get_subcommands().front();
  try {
    Config config = Config::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) tracelab::fail(tracelab::ErrorCode::ConfigError, "config: cannot open " + config_path);
      try {
        config = Config::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        tracelab::fail(tracelab::ErrorCode::ConfigError, std::string("config: ") + e.what());
      }
      if (!config.is_object()) tracelab::fail(tracelab::ErrorCode::ConfigError, "config: must be a JSON object");
      if (out_path.empty() && config.contains("out") && config["out"].is_string()) out_path = config["out"];
    }
    for (const auto& [key, value] : values[sub_name])
      if (sub->count("--" + key) > 0) config[key] = value;

    std::vector<std::string> notices;
    const Config validated = tracelab::cli::validate(sub_name, config, notices);
    for (const auto& n : notices) std::cerr << "notice: " << n << '\n';
    const int workers = threads > 0 ? threads : tracelab::thread_count_from_env();
    const auto result = tracelab::cli::run(sub_name, validated, workers);
    if (out_path.empty()) {
      std::cout << result.text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) tracelab::fail(tracelab::ErrorCode::ConfigError, "out: cannot write " + out_path);
      out << result.text;
    }
    if (result.status == 3) std::cerr << "audit: at least one bound with met preconditions was violated\n";
    return result.status;
  } catch (const tracelab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == tracelab::ErrorCode::ConfigError || e.code() == tracelab::ErrorCode::ParseError ? 2 : 1;
  }
}
