#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/datasets/synthetic.hpp"
#include "bdpgo/partition/partitioning.hpp"
#include "bdpgo/partition/repartition.hpp"
#include "bdpgo/swarm/network.hpp"
#include "bdpgo/swarm/state.hpp"
#include "bdpgo/trajgen/stream.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bdpgo {

struct SwarmConfig {
  int n_robots = 10;
  NetworkMode mode = NetworkMode::infrastructure;
  double radius = 10.0;
  std::vector<Failure> failures;
  Method method = Method::proposed;
  std::size_t dn = 100;
  double gamma = 1.5;
  double nu = 1.1;
  RepartitionOptions repartition;
  std::size_t solve_every = 10;
};

/// JSON-lines event sink: {"tick":..,"type":..,"payload":{..}} per line.
class EventLog {
 public:
  explicit EventLog(std::ostream* out = nullptr) : out_(out) {}
  void emit(std::size_t tick, const std::string& type, nlohmann::json payload);
  std::size_t count(const std::string& type) const;

 private:
  std::ostream* out_;
  std::map<std::string, std::size_t> counts_;
};

/// Everything a solver needs at a start-optimization event.
struct SolveRequest {
  std::size_t tick = 0;
  SubSwarm group;
  /// Keyframes known to the group and owned by a member, ascending id, with
  /// every dataset edge between them; vertex values are the current estimates.
  PoseGraph graph;
  std::vector<PoseGraph::Index> dataset_index;  ///< by graph index
  Partitioning parts;                           ///< part = member rank
  std::size_t orphans = 0;  ///< known keyframes whose owner is not a member
  /// Relaxed rotation blocks kept by the owners between solves, by graph index.
  std::vector<Mat3> relaxed;
  /// Optimized poses by graph index; written back when the hook fills it.
  std::vector<Pose> result;
  /// Updated relaxed blocks; written back when the hook fills them.
  std::vector<Mat3> relaxed_result;
};

using SolveHook = std::function<void(SolveRequest&)>;

struct SwarmStats {
  std::size_t keyframes = 0;
  std::size_t repartitions = 0;
  std::size_t solves = 0;
  std::size_t topology_changes = 0;
  double partition_seconds = 0.0;  ///< host wall time spent in partitioning
};

/// Tick-driven simulator of the partitioning protocol on every robot.
///
/// Each tick: failures take effect, sub-swarms are recomputed from the
/// positions reached so far, new keyframes are assigned by their robot and
/// pushed to its sub-swarm, and then every sub-swarm syncs (the main pulls
/// from all members, then all members pull from the main), the main decides
/// on a repartition, and a solve is requested every solve_every new keyframes.
class SwarmSimulator {
 public:
  SwarmSimulator(const Dataset& dataset, std::vector<KeyframeEvent> events, SwarmConfig config,
                 EventLog* log = nullptr);

  /// Runs all ticks. Throws InvariantError when a solve in a repartitioning
  /// method would leave keyframes without an owner.
  void run(const SolveHook& hook = {});

  /// Runs one tick; returns false once the stream is exhausted.
  bool step(const SolveHook& hook = {});
  std::size_t tick() const { return tick_; }

  const SwarmState& state(int robot) const { return states_[static_cast<std::size_t>(robot)]; }
  const NetworkModel& network() const { return net_; }
  const SwarmStats& stats() const { return stats_; }
  std::span<const Pose> estimate() const { return estimate_; }

 private:
  void deliver(const KeyframeEvent& ev, const std::vector<SubSwarm>& groups);
  void partitioning_step(const std::vector<SubSwarm>& groups, const SolveHook& hook);
  void repartition_group(const SubSwarm& g);
  void initialize_from_neighbor(const KeyframeEvent& ev, PoseGraph::Index v);
  SolveRequest make_request(const SubSwarm& g) const;
  const SubSwarm* group_of(int robot, const std::vector<SubSwarm>& groups) const;

  const Dataset& data_;
  std::vector<KeyframeEvent> events_;
  SwarmConfig cfg_;
  EventLog* log_;
  NetworkModel net_;
  std::vector<SwarmState> states_;
  std::vector<Pose> estimate_;  // by dataset index
  std::vector<Mat3> relaxed_;   // by dataset index
  std::vector<char> initialized_;
  std::vector<SubSwarm> last_groups_;
  std::size_t next_event_ = 0;
  std::size_t tick_ = 0;
  std::size_t last_tick_ = 0;
  SwarmStats stats_;
};

}  // namespace bdpgo
