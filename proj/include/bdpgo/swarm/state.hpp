#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/partition/fennel.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bdpgo {

enum class Method {
  baseline,  ///< every keyframe stays with the robot that produced it
  nofennel,  ///< native owner until the next repartition
  proposed,  ///< streaming assignment plus repartition
};

Method parse_method(const std::string& s);
std::string to_string(Method m);

/// Owner of a keyframe as carried by partition messages. A later epoch wins;
/// within one epoch the smaller robot id wins, so every replica resolves
/// conflicts the same way.
struct Ownership {
  int robot = -1;
  std::uint32_t epoch = 0;
  bool operator==(const Ownership&) const = default;
};

bool supersedes(const Ownership& a, const Ownership& b);

/// Per-robot protocol state. Vertices are dataset indices; the replica's
/// edges are implied (every dataset edge between two known keyframes). Both
/// the keyframe set and the ownership table keep append-only change logs so
/// that pulls only transfer what the puller has not read yet.
class SwarmState {
 public:
  using Index = PoseGraph::Index;

  SwarmState(int robot, int n_robots, std::size_t dataset_vertices);

  int robot() const { return robot_; }
  bool knows(Index v) const { return known_[v] != 0; }
  std::size_t num_known() const { return known_log_.size(); }
  std::span<const Index> known_log() const { return known_log_; }
  const Ownership& owner(Index v) const { return owner_[v]; }
  /// Known keyframes currently owned by `robot`.
  std::size_t owned_by(int robot) const { return owned_count_[static_cast<std::size_t>(robot)]; }
  std::uint32_t epoch() const { return epoch_; }

  /// Adds a keyframe; false if it was already known. Counts toward the
  /// repartition and solve counters.
  bool learn(Index v);
  /// Applies `o` if it supersedes the current owner of known `v`.
  bool offer_owner(Index v, const Ownership& o);
  /// Set-difference sync: takes every keyframe and newer ownership that
  /// `other` holds and this replica has not read yet.
  void pull_from(const SwarmState& other);

  /// Hash of the known set and ownership table.
  std::uint64_t digest() const;

  FennelParams fennel;
  std::size_t since_repartition = 0;
  std::size_t since_solve = 0;
  std::vector<int> last_topology;

 private:
  int robot_;
  std::vector<char> known_;
  std::vector<Ownership> owner_;
  std::vector<std::size_t> owned_count_;
  std::vector<Index> known_log_;
  std::vector<Index> owner_log_;
  std::vector<std::size_t> known_cursor_;  // per other robot
  std::vector<std::size_t> owner_cursor_;
  std::uint32_t epoch_ = 0;
};

struct KeyframeMessage {
  PoseGraph::Index vertex;
  Ownership assigned;
};

/// Own keyframe arrival. `neighbors` are the dataset neighbours delivered so
/// far; `members` the robot's current sub-swarm (ascending, containing it).
/// Proposed: FENNEL over the members' parts; otherwise the robot keeps it.
/// Returns the message to push to the other members, or nothing for a
/// duplicate. `warning` receives a note when FENNEL had no capacity left.
std::optional<KeyframeMessage> handle_new_keyframe(SwarmState& s, PoseGraph::Index v,
                                                   std::span<const PoseGraph::Index> neighbors,
                                                   std::span<const int> members, Method method,
                                                   std::string* warning = nullptr);

/// Idempotent; a conflicting owner is resolved by supersedes().
void handle_remote_keyframe(SwarmState& s, const KeyframeMessage& m);

/// True on a topology change (counter reset) or once dn keyframes arrived
/// since the last repartition (dn subtracted, remainder kept).
bool need_repartition(SwarmState& s, std::span<const int> topology_now, std::size_t dn);

}  // namespace bdpgo
