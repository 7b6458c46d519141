#include "bdpgo/swarm/state.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>

namespace bdpgo {

Method parse_method(const std::string& s) {
  if (s == "baseline") return Method::baseline;
  if (s == "nofennel") return Method::nofennel;
  if (s == "proposed") return Method::proposed;
  throw ParameterError("unknown method '" + s + "'");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::baseline: return "baseline";
    case Method::nofennel: return "nofennel";
    case Method::proposed: return "proposed";
  }
  return "?";
}

bool supersedes(const Ownership& a, const Ownership& b) {
  if (b.robot < 0) return a.robot >= 0;
  if (a.epoch != b.epoch) return a.epoch > b.epoch;
  return a.robot >= 0 && a.robot < b.robot;
}

SwarmState::SwarmState(int robot, int n_robots, std::size_t dataset_vertices)
    : robot_(robot), known_(dataset_vertices, 0), owner_(dataset_vertices),
      owned_count_(static_cast<std::size_t>(n_robots), 0), known_cursor_(static_cast<std::size_t>(n_robots), 0),
      owner_cursor_(static_cast<std::size_t>(n_robots), 0) {}

bool SwarmState::learn(Index v) {
  if (known_[v]) return false;
  known_[v] = 1;
  known_log_.push_back(v);
  ++since_repartition;
  ++since_solve;
  if (owner_[v].robot >= 0) ++owned_count_[static_cast<std::size_t>(owner_[v].robot)];
  return true;
}

bool SwarmState::offer_owner(Index v, const Ownership& o) {
  if (!supersedes(o, owner_[v])) return false;
  if (known_[v] && owner_[v].robot >= 0) --owned_count_[static_cast<std::size_t>(owner_[v].robot)];
  owner_[v] = o;
  if (known_[v]) ++owned_count_[static_cast<std::size_t>(o.robot)];
  owner_log_.push_back(v);
  epoch_ = std::max(epoch_, o.epoch);
  return true;
}

void SwarmState::pull_from(const SwarmState& other) {
  const auto r = static_cast<std::size_t>(other.robot_);
  // Keyframes first so that ownership counts land on known vertices.
  for (auto& c = known_cursor_[r]; c < other.known_log_.size(); ++c) learn(other.known_log_[c]);
  for (auto& c = owner_cursor_[r]; c < other.owner_log_.size(); ++c) {
    const Index v = other.owner_log_[c];
    offer_owner(v, other.owner_[v]);
  }
}

std::uint64_t SwarmState::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  for (Index v = 0; v < known_.size(); ++v) {
    if (!known_[v]) continue;
    mix(v);
    mix(static_cast<std::uint64_t>(owner_[v].robot + 1));
    mix(owner_[v].epoch);
  }
  return h;
}

std::optional<KeyframeMessage> handle_new_keyframe(SwarmState& s, PoseGraph::Index v,
                                                   std::span<const PoseGraph::Index> neighbors,
                                                   std::span<const int> members, Method method,
                                                   std::string* warning) {
  if (s.knows(v)) {
    if (warning) *warning = "duplicate keyframe ignored";
    return std::nullopt;
  }
  Ownership o{s.robot(), s.epoch()};
  if (method == Method::proposed) {
    const auto k = static_cast<int>(members.size());
    if (s.fennel.k != k)
      s.fennel = FennelParams::make(k, s.fennel.est_vertices, s.fennel.est_edges, s.fennel.gamma, s.fennel.nu);
    std::vector<std::size_t> sizes;
    for (int m : members) sizes.push_back(s.owned_by(m));
    std::vector<int> labels;
    for (auto u : neighbors) {
      if (!s.knows(u)) continue;
      const auto it = std::lower_bound(members.begin(), members.end(), s.owner(u).robot);
      labels.push_back(it != members.end() && *it == s.owner(u).robot ? static_cast<int>(it - members.begin()) : -1);
    }
    int part = 0;
    try {
      part = fennel_choose(sizes, labels, s.fennel);
    } catch (const CapacityError&) {
      part = static_cast<int>(std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
      if (warning) *warning = "all partitions at capacity; keyframe placed in the smallest";
    }
    o.robot = members[static_cast<std::size_t>(part)];
  }
  s.learn(v);
  s.offer_owner(v, o);
  return KeyframeMessage{v, o};
}

void handle_remote_keyframe(SwarmState& s, const KeyframeMessage& m) {
  s.learn(m.vertex);
  s.offer_owner(m.vertex, m.assigned);
}

bool need_repartition(SwarmState& s, std::span<const int> topology_now, std::size_t dn) {
  if (!std::equal(topology_now.begin(), topology_now.end(), s.last_topology.begin(), s.last_topology.end())) {
    s.last_topology.assign(topology_now.begin(), topology_now.end());
    s.since_repartition = 0;
    return true;
  }
  if (dn > 0 && s.since_repartition >= dn) {
    s.since_repartition -= dn;
    return true;
  }
  return false;
}

}  // namespace bdpgo
