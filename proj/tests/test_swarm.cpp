#include "support.hpp"

#include "bdpgo/datasets/synthetic.hpp"
#include "bdpgo/swarm/network.hpp"
#include "bdpgo/swarm/simulator.hpp"
#include "bdpgo/swarm/state.hpp"
#include "bdpgo/trajgen/paths.hpp"
#include "bdpgo/trajgen/stream.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace bdpgo;

namespace {

struct Run {
  Dataset data;
  std::vector<KeyframeEvent> events;
};

Run small_run(std::size_t vertices, std::uint64_t seed, PathBalance balance = PathBalance::uneven,
              StreamTiming timing = StreamTiming::stretched) {
  Run r{make_synthetic("intel", vertices, seed), {}};
  auto paths = generate_paths(r.data.graph, 10, seed, balance);
  r.events = schedule_stream(r.data.graph, paths, timing);
  return r;
}

}  // namespace

TEST_CASE("sub_swarms examples") {
  NetworkModel infra(10, NetworkMode::infrastructure);
  const auto one = infra.sub_swarms(0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].main == 0);
  CHECK(one[0].members.size() == 10);

  NetworkModel adhoc(4, NetworkMode::adhoc, 10.0);
  adhoc.set_position(0, Vec3(0, 0, 0));
  adhoc.set_position(1, Vec3(5, 0, 0));
  adhoc.set_position(2, Vec3(50, 0, 0));
  adhoc.set_position(3, Vec3(55, 0, 0));
  const auto two = adhoc.sub_swarms(0);
  REQUIRE(two.size() == 2);
  CHECK(two[0].members == std::vector<int>{0, 1});
  CHECK(two[1].members == std::vector<int>{2, 3});
  CHECK(adhoc.linked(0, 1, 0) == adhoc.linked(1, 0, 0));

  NetworkModel failing(3, NetworkMode::infrastructure, 10.0, {Failure{0, 5}});
  CHECK(failing.sub_swarms(4)[0].main == 0);
  const auto after = failing.sub_swarms(5);
  REQUIRE(after.size() == 1);
  CHECK(after[0].main == 1);
  CHECK(after[0].members == std::vector<int>{1, 2});
  CHECK_FALSE(failing.linked(0, 1, 6));
}

TEST_CASE("need_repartition examples") {
  SwarmState s(0, 3, 300);
  const std::vector<int> all{0, 1, 2};
  s.last_topology = all;
  for (PoseGraph::Index v = 0; v < 99; ++v) s.learn(v);
  CHECK_FALSE(need_repartition(s, all, 100));
  s.learn(99);
  CHECK(need_repartition(s, all, 100));
  CHECK(s.since_repartition == 0);
  const std::vector<int> dropped{0, 1};
  CHECK(need_repartition(s, dropped, 100));
}

TEST_CASE("keyframe handlers") {
  SwarmState s(1, 3, 10);
  s.fennel = FennelParams::make(3, 100, 100);
  const std::vector<int> members{0, 1, 2};
  auto msg = handle_new_keyframe(s, 4, {}, members, Method::proposed);
  REQUIRE(msg.has_value());
  CHECK(s.knows(4));
  CHECK(s.owner(4).robot == msg->assigned.robot);
  CHECK_FALSE(handle_new_keyframe(s, 4, {}, members, Method::proposed).has_value());

  // Neighbours all with robot 2 and parts near-equal: robot 2 gets it.
  SwarmState t(0, 3, 10);
  t.fennel = FennelParams::make(3, 100, 100);
  for (PoseGraph::Index v = 0; v < 3; ++v) {
    t.learn(v);
    t.offer_owner(v, Ownership{static_cast<int>(v), 0});
  }
  t.learn(3);
  t.offer_owner(3, Ownership{2, 0});
  const std::vector<PoseGraph::Index> nb{2, 3};
  CHECK(handle_new_keyframe(t, 5, nb, members, Method::proposed)->assigned.robot == 2);
  CHECK(handle_new_keyframe(t, 6, nb, members, Method::baseline)->assigned.robot == 0);

  SwarmState r(2, 3, 10);
  handle_remote_keyframe(r, KeyframeMessage{7, Ownership{0, 1}});
  CHECK(r.owner(7).robot == 0);
  const auto digest = r.digest();
  handle_remote_keyframe(r, KeyframeMessage{7, Ownership{0, 1}});
  CHECK(r.digest() == digest);
  handle_remote_keyframe(r, KeyframeMessage{7, Ownership{1, 0}});
  CHECK(r.owner(7).robot == 0);
  handle_remote_keyframe(r, KeyframeMessage{7, Ownership{2, 2}});
  CHECK(r.owner(7).robot == 2);
  CHECK(supersedes(Ownership{1, 3}, Ownership{0, 2}));
  CHECK(supersedes(Ownership{0, 3}, Ownership{1, 3}));
  CHECK_FALSE(supersedes(Ownership{1, 3}, Ownership{0, 3}));
}

TEST_CASE("pull sync makes replicas equal") {
  SwarmState a(0, 2, 20), b(1, 2, 20);
  for (PoseGraph::Index v = 0; v < 10; ++v) {
    a.learn(v);
    a.offer_owner(v, Ownership{0, 0});
  }
  for (PoseGraph::Index v = 5; v < 15; ++v) {
    b.learn(v);
    b.offer_owner(v, Ownership{1, 1});
  }
  a.pull_from(b);
  b.pull_from(a);
  CHECK(a.digest() == b.digest());
  CHECK(a.num_known() == 15);
  CHECK(a.owner(7).robot == 1);
}

TEST_CASE("replicas converge and repartitions follow dn under a static topology") {
  const Run run = small_run(600, 3);
  SwarmConfig cfg;
  cfg.method = Method::proposed;
  SwarmSimulator sim(run.data, run.events, cfg);
  std::size_t mismatches = 0;
  while (sim.step()) {
    for (int r = 1; r < 10; ++r) mismatches += sim.state(r).digest() != sim.state(0).digest() ? 1 : 0;
    CHECK(sim.network().sub_swarms(sim.tick()).size() == 1);
  }
  CHECK(mismatches == 0);
  CHECK(sim.stats().keyframes == 600);
  CHECK(sim.stats().repartitions == 600 / cfg.dn);
}

TEST_CASE("every solve request in a split swarm covers its keyframes") {
  const Run run = small_run(500, 5);
  SwarmConfig cfg;
  cfg.mode = NetworkMode::adhoc;
  cfg.radius = 10.0;
  cfg.failures = {Failure{2, 40}};
  std::size_t solves = 0, groups = 0;
  SwarmSimulator sim(run.data, run.events, cfg);
  sim.run([&](SolveRequest& req) {
    ++solves;
    CHECK(req.orphans == 0);
    CHECK(req.parts.covers(req.graph));
    const bool has_failed = std::find(req.group.members.begin(), req.group.members.end(), 2) != req.group.members.end();
    CHECK((!has_failed || req.tick < 40));
    groups = std::max(groups, sim.network().sub_swarms(req.tick).size());
  });
  CHECK(solves > 0);
  CHECK(groups >= 2);
}

TEST_CASE("simulator event log is deterministic") {
  const Run run = small_run(300, 7);
  auto log_of = [&] {
    std::ostringstream os;
    EventLog log(&os);
    SwarmConfig cfg;
    cfg.mode = NetworkMode::adhoc;
    SwarmSimulator sim(run.data, run.events, cfg, &log);
    sim.run();
    return os.str();
  };
  const std::string a = log_of();
  CHECK_FALSE(a.empty());
  CHECK(a == log_of());
}

TEST_CASE("baseline keeps every keyframe with its robot") {
  const Run run = small_run(200, 9);
  SwarmConfig cfg;
  cfg.method = Method::baseline;
  SwarmSimulator sim(run.data, run.events, cfg);
  sim.run();
  CHECK(sim.stats().repartitions == 0);
  for (const auto& ev : run.events) CHECK(sim.state(0).owner(run.data.graph.index_of(ev.id)).robot == ev.robot);
}
