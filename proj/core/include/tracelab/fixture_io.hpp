#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tracelab/graph.hpp"
#include "tracelab/walk.hpp"

namespace tracelab {

// Graph fixture JSON:
//   {"vertices":[{"id":..,"alpha":..}], "edges":[{"id":..,"u":..,"v":..,"beta":..}],
//    "roots":[...], "generalized":bool}
// "u"/"v" may be the string "CEMETERY" in a generalized graph. Roots are vertex ids.
RootedGraph parse_fixture(const std::string& text);
RootedGraph read_fixture(const std::string& path);
std::string fixture_to_json(const RootedGraph& g, int indent = 1);
void write_fixture(const RootedGraph& g, const std::string& path);

// Trajectories as JSON lines {"t":..,"vertex":..,"edge":..}; the first line
// carries the start state with edge null. Vertices are written as labels.
void write_trajectory_jsonl(const WeightedMultiGraph& g, const TrajectorySegment& path, std::ostream& out);
TrajectorySegment read_trajectory_jsonl(const WeightedMultiGraph& g, std::istream& in, double horizon);

}  // namespace tracelab
