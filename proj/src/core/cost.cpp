#include "bdpgo/core/cost.hpp"

#include "bdpgo/core/errors.hpp"
#include "bdpgo/kernels/kernels.hpp"

#include <vector>

namespace bdpgo {

double edge_cost(const PoseGraphEdge& e, const Pose& from, const Pose& to) {
  const Vec3 rt = to.translation - from.translation - from.rotation * e.rel_translation;
  const Mat3 rr = to.rotation - from.rotation * e.rel_rotation;
  return e.weight_t * e.weight_t * rt.squaredNorm() +
         0.5 * e.weight_R * e.weight_R * rr.squaredNorm();
}

double evaluate_cost(const PoseGraph& graph, const Estimate& estimate) {
  double total = 0.0;
  auto lookup = [&](KeyframeId id) -> const Pose& {
    auto it = estimate.find(id);
    if (it == estimate.end()) throw LookupError("estimate has no pose for vertex " + std::to_string(id.value));
    return it->second;
  };
  for (const auto& id : graph.ids()) lookup(id);
  for (const auto& e : graph.edges()) total += edge_cost(e, lookup(e.from), lookup(e.to));
  return total;
}

double evaluate_cost(const PoseGraph& graph, std::span<const Pose> by_index, Exec exec) {
  if (by_index.size() != graph.num_vertices()) {
    throw LookupError("estimate size does not match the graph");
  }
  std::vector<double> per_edge(graph.num_edges());
  kernels::edge_costs(graph, by_index, per_edge, exec);
  return kernels::ordered_sum(per_edge);
}

double evaluate_cost(const PoseGraph& graph, Exec exec) {
  return evaluate_cost(graph, graph.poses(), exec);
}

Estimate to_estimate(const PoseGraph& graph, std::span<const Pose> by_index) {
  Estimate out;
  out.reserve(graph.num_vertices());
  for (std::size_t i = 0; i < graph.num_vertices(); ++i) {
    out.emplace(graph.id_at(static_cast<PoseGraph::Index>(i)), by_index[i]);
  }
  return out;
}

}  // namespace bdpgo
