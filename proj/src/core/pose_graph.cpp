#include "bdpgo/core/pose_graph.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace bdpgo {

const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::odometry: return "odometry";
    case EdgeKind::loop: return "loop";
    case EdgeKind::repair: return "repair";
  }
  return "unknown";
}

bool PoseGraph::add_vertex(KeyframeId id, const Pose& pose) {
  auto [it, inserted] = index_.try_emplace(id, static_cast<Index>(ids_.size()));
  if (!inserted) return false;
  ids_.push_back(id);
  poses_.push_back(pose);
  adjacency_.emplace_back();
  return true;
}

std::size_t PoseGraph::add_edge(const PoseGraphEdge& edge) {
  auto from = find(edge.from);
  auto to = find(edge.to);
  if (!from || !to) {
    throw ReferenceError("edge " + std::to_string(edge.from.value) + " -> " +
                         std::to_string(edge.to.value) + " references an unknown vertex");
  }
  if (*from == *to) {
    throw DataError("self-loop on vertex " + std::to_string(edge.from.value));
  }
  const std::size_t e = edges_.size();
  edges_.push_back(edge);
  endpoints_.emplace_back(*from, *to);
  adjacency_[*from].push_back({*to, e});
  adjacency_[*to].push_back({*from, e});
  return e;
}

std::optional<PoseGraph::Index> PoseGraph::find(KeyframeId id) const {
  if (auto it = index_.find(id); it != index_.end()) return it->second;
  return std::nullopt;
}

PoseGraph::Index PoseGraph::index_of(KeyframeId id) const {
  if (auto it = index_.find(id); it != index_.end()) return it->second;
  throw LookupError("unknown vertex " + std::to_string(id.value));
}

std::vector<KeyframeId> PoseGraph::neighbors(KeyframeId id) const {
  std::vector<KeyframeId> out;
  for (const auto& inc : adjacency_[index_of(id)]) out.push_back(ids_[inc.neighbor]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<KeyframeId> PoseGraph::sorted_ids() const {
  std::vector<KeyframeId> out(ids_.begin(), ids_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PoseGraph::Index> PoseGraph::canonical_order() const {
  std::vector<Index> order(ids_.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return ids_[a] < ids_[b]; });
  return order;
}

}  // namespace bdpgo
