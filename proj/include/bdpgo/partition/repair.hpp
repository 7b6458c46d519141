#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/partition/partitioning.hpp"

#include <vector>

namespace bdpgo {

struct UnreachableComponent {
  int part;
  std::vector<KeyframeId> vertices;
};

struct RepairResult {
  std::vector<PoseGraphEdge> edges;
  /// Components that no path over the whole graph can link to the rest of
  /// their part (the graph itself is disconnected there).
  std::vector<UnreachableComponent> unreachable;
};

/// For every part whose induced subgraph has c > 1 components, builds up to
/// c - 1 repair edges: components are merged in ascending smallest-id order,
/// each joined to the already-merged set by a shortest path over the whole
/// graph composed into one measurement.
RepairResult repair_connectivity(const PoseGraph& graph, const Partitioning& parts);

}  // namespace bdpgo
