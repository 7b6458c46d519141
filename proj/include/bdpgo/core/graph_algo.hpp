#pragma once

#include "bdpgo/core/pose_graph.hpp"

#include <span>
#include <vector>

namespace bdpgo {

/// Components of the subgraph induced by `subset`, each sorted ascending,
/// ordered by smallest contained id. Ids not in the graph are ignored.
std::vector<std::vector<KeyframeId>> connected_components(
    const PoseGraph& graph, std::span<const KeyframeId> subset);

/// Component label per vertex index over the whole graph. Labels are numbered
/// by ascending smallest member id.
std::vector<int> component_labels(const PoseGraph& graph);

/// Minimum-hop path over the whole graph from some source to some target.
/// Ties resolve toward the smallest next-vertex id. Throws UnreachableError.
std::vector<KeyframeId> shortest_path(const PoseGraph& graph,
                                      std::span<const KeyframeId> sources,
                                      std::span<const KeyframeId> targets);

/// Composes the measurements along `path` into a single repair edge from
/// path.front() to path.back(); edges traversed backwards are inverted.
/// Weights are the minimum over the constituent edges divided by
/// sqrt(number of hops). Throws PathError.
PoseGraphEdge compose_along_path(const PoseGraph& graph, std::span<const KeyframeId> path);

}  // namespace bdpgo
