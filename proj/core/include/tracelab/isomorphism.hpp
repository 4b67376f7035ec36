#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tracelab/graph.hpp"

namespace tracelab {

struct IsomorphismOptions {
  bool match_roots = true;
  // Edge pairs (edge of a, edge of b) that the isomorphism must respect, e.g.
  // exploration histories matched elementwise.
  std::vector<std::pair<EdgeId, EdgeId>> fixed_edges;
};

struct Isomorphism {
  std::vector<VertexId> vertex_map;  // a -> b
  std::vector<EdgeId> edge_map;      // a -> b
};

// Searches for a weight-, root- and incidence-preserving bijection a -> b.
// Cemetery endpoints map to the cemetery.
std::optional<Isomorphism> is_isomorphic(const RootedGraph& a, const RootedGraph& b,
                                         const IsomorphismOptions& options = {});

}  // namespace tracelab
