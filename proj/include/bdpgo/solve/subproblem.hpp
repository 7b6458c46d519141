#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/partition/partitioning.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bdpgo {

struct InterEdge {
  std::size_t edge;    ///< index into graph.edges()
  KeyframeId remote;   ///< endpoint owned by another part
  bool local_is_from;  ///< whether the local endpoint is edge.from
  Pose remote_copy;    ///< last published value of the remote endpoint
};

/// Local problem of one part: its variables x_i*, the edges fully inside the
/// part, and the edges crossing to other parts with a copy of the remote pose.
struct Subproblem {
  int owner = 0;
  std::vector<KeyframeId> local_vars;  ///< ascending id
  std::vector<std::size_t> intra_edges;
  std::vector<InterEdge> inter_edges;
};

/// One subproblem per part, remote copies taken from the graph's vertex values.
/// Throws ConnectivityError naming the part when a part splits into components
/// that the graph could connect (connectivity repair has not been applied).
/// Components that lie in different connected pieces of the graph itself are
/// accepted; each piece is anchored separately by the solvers.
std::vector<Subproblem> build_subproblems(const PoseGraph& graph, const Partitioning& parts);

struct SubproblemCost {
  double intra = 0.0;
  double inter = 0.0;
};

/// Local cost of `sub` at `estimate` (by graph index). Inter edges use the
/// subproblem's remote copies.
SubproblemCost subproblem_cost(const PoseGraph& graph, const Subproblem& sub,
                               std::span<const Pose> estimate);

/// sum over subproblems of intra + inter / 2; equals evaluate_cost when the
/// remote copies are current.
double distributed_cost(const PoseGraph& graph, std::span<const Subproblem> subs,
                        std::span<const Pose> estimate);

}  // namespace bdpgo
