#pragma once

#include "bdpgo/core/pose_graph.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace bdpgo {

/// Edge-cut partitioning: every assigned vertex belongs to exactly one of k
/// disjoint parts. Part sizes are maintained alongside the assignment.
class Partitioning {
 public:
  explicit Partitioning(int k = 1);

  int k() const { return static_cast<int>(sizes_.size()); }

  /// Inserts or moves `v`. Throws ParameterError if `part` is outside [0, k).
  void assign(KeyframeId v, int part);
  bool contains(KeyframeId v) const { return assignment_.contains(v); }
  std::optional<int> part_of(KeyframeId v) const;
  /// Throws LookupError for unassigned vertices.
  int at(KeyframeId v) const;

  std::size_t size(int part) const { return sizes_[static_cast<std::size_t>(part)]; }
  std::span<const std::size_t> sizes() const { return sizes_; }
  std::size_t num_assigned() const { return assignment_.size(); }

  /// P_1..P_k, each sorted ascending.
  std::vector<std::vector<KeyframeId>> part_sets() const;
  bool covers(const PoseGraph& graph) const;
  const std::unordered_map<KeyframeId, int>& assignment() const { return assignment_; }

  /// Part label per graph index. Throws LookupError if a vertex is unassigned.
  std::vector<int> labels(const PoseGraph& graph) const;
  static Partitioning from_labels(const PoseGraph& graph, std::span<const int> labels, int k);

  bool operator==(const Partitioning& other) const = default;

 private:
  std::unordered_map<KeyframeId, int> assignment_;
  std::vector<std::size_t> sizes_;
};

}  // namespace bdpgo
