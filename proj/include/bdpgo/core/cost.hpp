#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/kernels/exec.hpp"

#include <span>
#include <unordered_map>

namespace bdpgo {

using Estimate = std::unordered_map<KeyframeId, Pose>;

/// omega_t^2 |p_j - p_i - R_i t|^2 + omega_R^2 / 2 |R_j - R_i R~|_F^2
double edge_cost(const PoseGraphEdge& e, const Pose& from, const Pose& to);

/// Global cost over all edges, summed in edge order. Throws LookupError if
/// `estimate` misses a vertex.
double evaluate_cost(const PoseGraph& graph, const Estimate& estimate);

/// Same, with the estimate laid out by graph index.
double evaluate_cost(const PoseGraph& graph, std::span<const Pose> by_index,
                     Exec exec = Exec::parallel);

/// Cost of the graph at its own vertex values.
double evaluate_cost(const PoseGraph& graph, Exec exec = Exec::parallel);

Estimate to_estimate(const PoseGraph& graph, std::span<const Pose> by_index);

}  // namespace bdpgo
