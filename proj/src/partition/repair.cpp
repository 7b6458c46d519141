#include "bdpgo/partition/repair.hpp"

#include "bdpgo/core/graph_algo.hpp"

#include <map>

namespace bdpgo {

RepairResult repair_connectivity(const PoseGraph& graph, const Partitioning& parts) {
  RepairResult out;
  const auto global = component_labels(graph);
  const auto sets = parts.part_sets();
  for (std::size_t p = 0; p < sets.size(); ++p) {
    const auto comps = connected_components(graph, sets[p]);
    if (comps.size() <= 1) continue;
    // Only components inside the same connected piece of the whole graph can
    // be joined; group them and chain merges within each group.
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      groups[global[graph.index_of(comps[c].front())]].push_back(c);
    }
    const int first_group = global[graph.index_of(comps.front().front())];
    for (const auto& [label, members] : groups) {
      if (label != first_group) out.unreachable.push_back({static_cast<int>(p), comps[members.front()]});
      std::vector<KeyframeId> merged = comps[members.front()];
      for (std::size_t m = 1; m < members.size(); ++m) {
        const auto& next = comps[members[m]];
        const auto path = shortest_path(graph, merged, next);
        out.edges.push_back(compose_along_path(graph, path));
        merged.insert(merged.end(), next.begin(), next.end());
      }
    }
  }
  return out;
}

}  // namespace bdpgo
