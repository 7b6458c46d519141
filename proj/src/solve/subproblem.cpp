#include "bdpgo/solve/subproblem.hpp"

#include "bdpgo/core/cost.hpp"
#include "bdpgo/core/errors.hpp"
#include "bdpgo/core/graph_algo.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace bdpgo {

std::vector<Subproblem> build_subproblems(const PoseGraph& graph, const Partitioning& parts) {
  const auto labels = parts.labels(graph);
  const auto global = component_labels(graph);
  std::vector<Subproblem> subs(static_cast<std::size_t>(parts.k()));
  for (int p = 0; p < parts.k(); ++p) subs[static_cast<std::size_t>(p)].owner = p;

  for (PoseGraph::Index i : graph.canonical_order())
    subs[static_cast<std::size_t>(labels[i])].local_vars.push_back(graph.id_at(i));

  for (auto& sub : subs) {
    // Two local components inside one global component mean the part could be
    // connected but is not.
    std::set<int> seen;
    for (const auto& comp : connected_components(graph, sub.local_vars)) {
      if (!seen.insert(global[graph.index_of(comp.front())]).second)
        throw ConnectivityError("part " + std::to_string(sub.owner) +
                                " is disconnected; apply connectivity repair first");
    }
  }

  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    const auto [a, b] = graph.endpoints(e);
    const int la = labels[a];
    const int lb = labels[b];
    if (la == lb) {
      subs[static_cast<std::size_t>(la)].intra_edges.push_back(e);
      continue;
    }
    subs[static_cast<std::size_t>(la)].inter_edges.push_back(
        {e, graph.id_at(b), true, graph.pose_at(b)});
    subs[static_cast<std::size_t>(lb)].inter_edges.push_back(
        {e, graph.id_at(a), false, graph.pose_at(a)});
  }
  return subs;
}

SubproblemCost subproblem_cost(const PoseGraph& graph, const Subproblem& sub,
                               std::span<const Pose> estimate) {
  SubproblemCost c;
  for (std::size_t e : sub.intra_edges) {
    const auto [a, b] = graph.endpoints(e);
    c.intra += edge_cost(graph.edge(e), estimate[a], estimate[b]);
  }
  for (const auto& ie : sub.inter_edges) {
    const auto [a, b] = graph.endpoints(ie.edge);
    if (ie.local_is_from)
      c.inter += edge_cost(graph.edge(ie.edge), estimate[a], ie.remote_copy);
    else
      c.inter += edge_cost(graph.edge(ie.edge), ie.remote_copy, estimate[b]);
  }
  return c;
}

double distributed_cost(const PoseGraph& graph, std::span<const Subproblem> subs,
                        std::span<const Pose> estimate) {
  double total = 0.0;
  for (const auto& sub : subs) {
    const auto c = subproblem_cost(graph, sub, estimate);
    total += c.intra + 0.5 * c.inter;
  }
  return total;
}

}  // namespace bdpgo
