#include "bdpgo/partition/partitioning.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>
#include <string>

namespace bdpgo {

Partitioning::Partitioning(int k) {
  if (k < 1) throw ParameterError("partition count must be at least 1");
  sizes_.assign(static_cast<std::size_t>(k), 0);
}

void Partitioning::assign(KeyframeId v, int part) {
  if (part < 0 || part >= k()) {
    throw ParameterError("part " + std::to_string(part) + " outside [0, " + std::to_string(k()) + ")");
  }
  auto [it, inserted] = assignment_.try_emplace(v, part);
  if (!inserted) {
    --sizes_[static_cast<std::size_t>(it->second)];
    it->second = part;
  }
  ++sizes_[static_cast<std::size_t>(part)];
}

std::optional<int> Partitioning::part_of(KeyframeId v) const {
  if (auto it = assignment_.find(v); it != assignment_.end()) return it->second;
  return std::nullopt;
}

int Partitioning::at(KeyframeId v) const {
  if (auto it = assignment_.find(v); it != assignment_.end()) return it->second;
  throw LookupError("vertex " + std::to_string(v.value) + " is not assigned");
}

std::vector<std::vector<KeyframeId>> Partitioning::part_sets() const {
  std::vector<std::vector<KeyframeId>> out(sizes_.size());
  for (std::size_t p = 0; p < sizes_.size(); ++p) out[p].reserve(sizes_[p]);
  for (const auto& [v, p] : assignment_) out[static_cast<std::size_t>(p)].push_back(v);
  for (auto& s : out) std::sort(s.begin(), s.end());
  return out;
}

bool Partitioning::covers(const PoseGraph& graph) const {
  for (auto id : graph.ids()) {
    if (!assignment_.contains(id)) return false;
  }
  return true;
}

std::vector<int> Partitioning::labels(const PoseGraph& graph) const {
  std::vector<int> out(graph.num_vertices());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(graph.id_at(static_cast<PoseGraph::Index>(i)));
  return out;
}

Partitioning Partitioning::from_labels(const PoseGraph& graph, std::span<const int> labels, int k) {
  Partitioning p(k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    p.assign(graph.id_at(static_cast<PoseGraph::Index>(i)), labels[i]);
  }
  return p;
}

}  // namespace bdpgo
