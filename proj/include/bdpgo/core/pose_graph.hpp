#pragma once

#include "bdpgo/core/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace bdpgo {

/// Incremental pose graph. Vertices get a dense index in insertion order; the
/// adjacency index lists, per vertex, every incident edge together with the
/// opposite endpoint.
class PoseGraph {
 public:
  using Index = std::uint32_t;

  struct Incidence {
    Index neighbor;
    std::size_t edge;
  };

  /// Returns false (and leaves the graph untouched) if `id` already exists.
  bool add_vertex(KeyframeId id, const Pose& pose);
  /// Throws ReferenceError if an endpoint is unknown, DataError on a self-loop.
  std::size_t add_edge(const PoseGraphEdge& edge);

  bool contains(KeyframeId id) const { return index_.contains(id); }
  std::optional<Index> find(KeyframeId id) const;
  /// Throws LookupError for unknown ids.
  Index index_of(KeyframeId id) const;
  KeyframeId id_at(Index i) const { return ids_[i]; }

  const Pose& pose(KeyframeId id) const { return poses_[index_of(id)]; }
  const Pose& pose_at(Index i) const { return poses_[i]; }
  void set_pose_at(Index i, const Pose& p) { poses_[i] = p; }

  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const KeyframeId> ids() const { return ids_; }
  std::span<const Pose> poses() const { return poses_; }
  const std::vector<PoseGraphEdge>& edges() const { return edges_; }
  const PoseGraphEdge& edge(std::size_t e) const { return edges_[e]; }
  std::pair<Index, Index> endpoints(std::size_t e) const { return endpoints_[e]; }

  std::span<const Incidence> incident(Index i) const { return adjacency_[i]; }
  /// N(v): distinct neighbours, ascending id.
  std::vector<KeyframeId> neighbors(KeyframeId id) const;

  /// Vertex ids in ascending order.
  std::vector<KeyframeId> sorted_ids() const;
  /// Vertex indices ordered by ascending id.
  std::vector<Index> canonical_order() const;

 private:
  std::vector<KeyframeId> ids_;
  std::vector<Pose> poses_;
  std::unordered_map<KeyframeId, Index> index_;
  std::vector<PoseGraphEdge> edges_;
  std::vector<std::pair<Index, Index>> endpoints_;
  std::vector<std::vector<Incidence>> adjacency_;
};

}  // namespace bdpgo
