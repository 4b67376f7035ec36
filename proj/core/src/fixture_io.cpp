#include "tracelab/fixture_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tracelab/error.hpp"

namespace tracelab {

using nlohmann::json;

namespace {

Endpoint endpoint_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "CEMETERY") return Endpoint::cemetery();
    fail(ErrorCode::ParseError, "endpoint string must be \"CEMETERY\"");
  }
  if (!j.is_number_unsigned()) fail(ErrorCode::ParseError, "endpoint must be a vertex id or \"CEMETERY\"");
  return Endpoint::vertex(j.get<Label>());
}

json endpoint_to(const WeightedMultiGraph& g, VertexId v) {
  if (v == kCemetery) return "CEMETERY";
  return g.vertex_label(v);
}

}  // namespace

RootedGraph parse_fixture(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  try {
    const bool generalized = doc.value("generalized", false);
    std::vector<VertexSpec> vertices;
    for (const auto& v : doc.at("vertices")) vertices.push_back({v.at("id").get<Label>(), v.at("alpha").get<double>()});
    std::vector<EdgeSpec> edges;
    for (const auto& e : doc.at("edges"))
      edges.push_back({e.at("id").get<Label>(), endpoint_from(e.at("u")), endpoint_from(e.at("v")),
                       e.at("beta").get<double>()});
    RootedGraph rg{build_graph(vertices, edges, generalized), {}};
    if (doc.contains("roots")) {
      for (const auto& r : doc.at("roots")) {
        const auto id = rg.graph.find_vertex(r.get<Label>());
        if (!id) fail(ErrorCode::NotAVertex, "root " + r.dump());
        rg.roots.push_back(*id);
      }
    }
    return rg;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

RootedGraph read_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str());
}

std::string fixture_to_json(const RootedGraph& rg, int indent) {
  const auto& g = rg.graph;
  json doc;
  doc["generalized"] = g.generalized();
  doc["vertices"] = json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) doc["vertices"].push_back({{"id", g.vertex_label(v)}, {"alpha", g.alpha(v)}});
  doc["edges"] = json::array();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.endpoints(e);
    doc["edges"].push_back(
        {{"id", g.edge_label(e)}, {"u", endpoint_to(g, a)}, {"v", endpoint_to(g, b)}, {"beta", g.beta(e)}});
  }
  doc["roots"] = json::array();
  for (VertexId r : rg.roots) doc["roots"].push_back(g.vertex_label(r));
  return doc.dump(indent);
}

void write_fixture(const RootedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::ConfigError, "cannot write " + path);
  out << fixture_to_json(g) << '\n';
}

void write_trajectory_jsonl(const WeightedMultiGraph& g, const TrajectorySegment& path, std::ostream& out) {
  out << json{{"t", 0.0}, {"vertex", endpoint_to(g, path.start)}, {"edge", nullptr}}.dump() << '\n';
  for (const auto& j : path.jumps) {
    json edge = j.edge == kCemetery ? json(nullptr) : json(g.edge_label(j.edge));
    out << json{{"t", j.time}, {"vertex", endpoint_to(g, j.to)}, {"edge", edge}}.dump() << '\n';
  }
}

TrajectorySegment read_trajectory_jsonl(const WeightedMultiGraph& g, std::istream& in, double horizon) {
  TrajectorySegment path;
  path.horizon = horizon;
  std::string line;
  bool first = true;
  auto vertex = [&](const json& v) -> VertexId {
    const Endpoint p = endpoint_from(v);
    if (p.is_cemetery) return kCemetery;
    const auto id = g.find_vertex(p.label);
    if (!id) fail(ErrorCode::NotAVertex, "vertex " + v.dump());
    return *id;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::ParseError, e.what());
    }
    if (first) {
      path.start = vertex(j.at("vertex"));
      first = false;
      continue;
    }
    EdgeId e = kCemetery;
    if (!j.at("edge").is_null()) {
      const auto id = g.find_edge(j.at("edge").get<Label>());
      if (!id) fail(ErrorCode::ParseError, "unknown edge " + j.at("edge").dump());
      e = *id;
    }
    path.jumps.push_back({j.at("t").get<double>(), vertex(j.at("vertex")), e});
  }
  if (first) fail(ErrorCode::ParseError, "empty trajectory");
  return path;
}

}  // namespace tracelab
