#include "bdpgo/swarm/simulator.hpp"

#include "bdpgo/core/errors.hpp"
#include "bdpgo/core/so3.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

namespace bdpgo {

void EventLog::emit(std::size_t tick, const std::string& type, nlohmann::json payload) {
  ++counts_[type];
  if (!out_) return;
  nlohmann::json line{{"tick", tick}, {"type", type}, {"payload", std::move(payload)}};
  *out_ << line.dump() << '\n';
}

std::size_t EventLog::count(const std::string& type) const {
  const auto it = counts_.find(type);
  return it == counts_.end() ? 0 : it->second;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

SwarmSimulator::SwarmSimulator(const Dataset& dataset, std::vector<KeyframeEvent> events, SwarmConfig config,
                               EventLog* log)
    : data_(dataset), events_(std::move(events)), cfg_(std::move(config)), log_(log),
      net_(cfg_.n_robots, cfg_.mode, cfg_.radius, cfg_.failures) {
  const std::size_t n = data_.graph.num_vertices();
  estimate_.assign(data_.graph.poses().begin(), data_.graph.poses().end());
  relaxed_.resize(n);
  initialized_.assign(n, 0);
  // Before the first repartition the window is dn keyframes with about two
  // edges each (odometry plus loop closures).
  const double n0 = static_cast<double>(std::max<std::size_t>(cfg_.dn, 1));
  for (int r = 0; r < cfg_.n_robots; ++r) {
    states_.emplace_back(r, cfg_.n_robots, n);
    states_.back().fennel = FennelParams::make(cfg_.n_robots, n0, 2 * n0, cfg_.gamma, cfg_.nu);
  }
  for (const auto& ev : events_)
    if (ev.robot < 0 || ev.robot >= cfg_.n_robots) throw ParameterError("event names an unknown robot");
  // Robots start where their first keyframe is.
  for (auto it = events_.rbegin(); it != events_.rend(); ++it) {
    const auto i = data_.graph.index_of(it->id);
    net_.set_position(it->robot, data_.ground_truth.empty() ? estimate_[i].translation
                                                           : data_.ground_truth[i].translation);
  }
  last_groups_ = net_.sub_swarms(0);
  for (const auto& g : last_groups_)
    for (int m : g.members) states_[static_cast<std::size_t>(m)].last_topology = g.members;
}

const SubSwarm* SwarmSimulator::group_of(int robot, const std::vector<SubSwarm>& groups) const {
  for (const auto& g : groups)
    if (std::binary_search(g.members.begin(), g.members.end(), robot)) return &g;
  return nullptr;
}

void SwarmSimulator::run(const SolveHook& hook) {
  while (step(hook)) {
  }
}

bool SwarmSimulator::step(const SolveHook& hook) {
  if (next_event_ >= events_.size()) return false;
  const std::size_t t = tick_;

  for (const auto& f : net_.failures())
    if (f.tick <= t && (t == 0 || f.tick > last_tick_) && log_) log_->emit(t, "failure", {{"robot", f.robot}});

  auto groups = net_.sub_swarms(t);
  if (groups != last_groups_) {
    ++stats_.topology_changes;
    if (log_) {
      nlohmann::json gs = nlohmann::json::array();
      for (const auto& g : groups) gs.push_back(g.members);
      log_->emit(t, "topology", {{"groups", gs}});
    }
    last_groups_ = groups;
  }

  const auto t0 = Clock::now();
  while (next_event_ < events_.size() && events_[next_event_].tick == t) deliver(events_[next_event_++], groups);
  stats_.partition_seconds += seconds_since(t0);

  partitioning_step(groups, hook);
  last_tick_ = t;
  if (next_event_ < events_.size()) tick_ = events_[next_event_].tick;
  else ++tick_;
  return true;
}

void SwarmSimulator::deliver(const KeyframeEvent& ev, const std::vector<SubSwarm>& groups) {
  if (!net_.alive(ev.robot, tick_)) return;  // a failed robot produces nothing
  const auto* g = group_of(ev.robot, groups);
  const auto v = data_.graph.index_of(ev.id);
  std::vector<PoseGraph::Index> neighbors;
  for (std::size_t e : ev.edges) {
    const auto [a, b] = data_.graph.endpoints(e);
    neighbors.push_back(a == v ? b : a);
  }
  std::sort(neighbors.begin(), neighbors.end());
  neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());

  if (!initialized_[v]) {
    initialize_from_neighbor(ev, v);
    relaxed_[v] = estimate_[v].rotation;
    initialized_[v] = 1;
  }

  auto& self = states_[static_cast<std::size_t>(ev.robot)];
  std::string warning;
  const auto msg = handle_new_keyframe(self, v, neighbors, g->members, cfg_.method, &warning);
  if (!warning.empty() && log_)
    log_->emit(tick_, "warning", {{"robot", ev.robot}, {"keyframe", ev.id.value}, {"message", warning}});
  if (!msg) return;
  ++stats_.keyframes;
  for (int m : g->members)
    if (m != ev.robot) handle_remote_keyframe(states_[static_cast<std::size_t>(m)], *msg);
  net_.set_position(ev.robot, data_.ground_truth.empty() ? estimate_[v].translation
                                                         : data_.ground_truth[v].translation);
}

// A new keyframe starts at its neighbour's current estimate composed with
// the measurement, preferring odometry over loop closures.
void SwarmSimulator::initialize_from_neighbor(const KeyframeEvent& ev, PoseGraph::Index v) {
  const auto& ds = data_.graph;
  const PoseGraphEdge* best = nullptr;
  std::size_t best_e = 0;
  for (std::size_t e : ev.edges) {
    const auto [a, b] = ds.endpoints(e);
    if (!initialized_[a == v ? b : a]) continue;
    const bool odo = ds.edge(e).kind == EdgeKind::odometry;
    if (!best || (odo && best->kind != EdgeKind::odometry)) {
      best = &ds.edge(e);
      best_e = e;
    }
  }
  if (!best) return;
  const auto [a, b] = ds.endpoints(best_e);
  const RelativePose m{best->rel_rotation, best->rel_translation};
  if (b == v) {
    const RelativePose p = compose(RelativePose{estimate_[a].rotation, estimate_[a].translation}, m);
    estimate_[v] = Pose{p.rotation, p.translation};
  } else {
    const RelativePose p = compose(RelativePose{estimate_[b].rotation, estimate_[b].translation}, inverse(m));
    estimate_[v] = Pose{p.rotation, p.translation};
  }
}

void SwarmSimulator::partitioning_step(const std::vector<SubSwarm>& groups, const SolveHook& hook) {
  for (const auto& g : groups) {
    const auto t0 = Clock::now();
    auto& main = states_[static_cast<std::size_t>(g.main)];
    for (int m : g.members)
      if (m != g.main) main.pull_from(states_[static_cast<std::size_t>(m)]);
    for (int m : g.members)
      if (m != g.main) states_[static_cast<std::size_t>(m)].pull_from(main);

    if (cfg_.method != Method::baseline && need_repartition(main, g.members, cfg_.dn)) repartition_group(g);
    stats_.partition_seconds += seconds_since(t0);

    if (cfg_.solve_every == 0 || main.since_solve < cfg_.solve_every) continue;
    for (int m : g.members) states_[static_cast<std::size_t>(m)].since_solve = 0;

    SolveRequest req = make_request(g);
    ++stats_.solves;
    if (req.orphans > 0 && cfg_.method != Method::baseline)
      throw InvariantError("coherence: " + std::to_string(req.orphans) + " keyframes without an owner in sub-swarm of robot " +
                           std::to_string(g.main) + " at tick " + std::to_string(tick_));
    if (hook) hook(req);
    if (req.result.size() == req.graph.num_vertices())
      for (std::size_t i = 0; i < req.result.size(); ++i) estimate_[req.dataset_index[i]] = req.result[i];
    if (req.relaxed_result.size() == req.graph.num_vertices())
      for (std::size_t i = 0; i < req.relaxed_result.size(); ++i) relaxed_[req.dataset_index[i]] = req.relaxed_result[i];
  }
}

void SwarmSimulator::repartition_group(const SubSwarm& g) {
  auto& main = states_[static_cast<std::size_t>(g.main)];
  const auto& ds = data_.graph;
  PoseGraph union_graph;
  std::vector<PoseGraph::Index> known(main.known_log().begin(), main.known_log().end());
  std::sort(known.begin(), known.end(), [&](auto a, auto b) { return ds.id_at(a) < ds.id_at(b); });
  for (auto v : known) union_graph.add_vertex(ds.id_at(v), Pose{});
  for (std::size_t e = 0; e < ds.num_edges(); ++e) {
    const auto [a, b] = ds.endpoints(e);
    if (main.knows(a) && main.knows(b)) union_graph.add_edge(ds.edge(e));
  }

  const int k = static_cast<int>(g.members.size());
  Partitioning current(k);
  for (auto v : known) {
    const int o = main.owner(v).robot;
    const auto it = std::lower_bound(g.members.begin(), g.members.end(), o);
    if (it != g.members.end() && *it == o) current.assign(ds.id_at(v), static_cast<int>(it - g.members.begin()));
  }

  Partitioning next;
  try {
    RepartitionOptions opts = cfg_.repartition;
    opts.seed = cfg_.repartition.seed ^ (static_cast<std::uint64_t>(tick_) << 8) ^ static_cast<std::uint64_t>(g.main);
    next = repartition(union_graph, current, k, opts);
  } catch (const InfeasibleError& e) {
    if (log_) log_->emit(tick_, "warning", {{"robot", g.main}, {"message", e.what()}});
    return;
  }

  std::uint32_t epoch = 0;
  for (int m : g.members) epoch = std::max(epoch, states_[static_cast<std::size_t>(m)].epoch());
  ++epoch;
  std::size_t moved = 0;
  for (auto v : known) {
    const Ownership o{g.members[static_cast<std::size_t>(next.at(ds.id_at(v)))], epoch};
    if (main.owner(v).robot != o.robot) ++moved;
    for (int m : g.members) states_[static_cast<std::size_t>(m)].offer_owner(v, o);
  }
  const std::size_t since = main.since_repartition;
  for (int m : g.members) {
    auto& s = states_[static_cast<std::size_t>(m)];
    s.fennel = update_fennel_params(FennelParams::make(k, s.fennel.est_vertices, s.fennel.est_edges, cfg_.gamma, cfg_.nu),
                                    union_graph.num_vertices(), union_graph.num_edges(), cfg_.dn);
    s.last_topology = g.members;
    s.since_repartition = since;
  }
  ++stats_.repartitions;
  if (log_) {
    std::vector<std::size_t> sizes(next.sizes().begin(), next.sizes().end());
    log_->emit(tick_, "repartition",
               {{"main", g.main}, {"members", g.members}, {"epoch", epoch}, {"vertices", union_graph.num_vertices()},
                {"moved", moved}, {"sizes", sizes}});
  }
}

SolveRequest SwarmSimulator::make_request(const SubSwarm& g) const {
  const auto& main = states_[static_cast<std::size_t>(g.main)];
  const auto& ds = data_.graph;
  SolveRequest req;
  req.tick = tick_;
  req.group = g;
  req.parts = Partitioning(static_cast<int>(g.members.size()));

  std::vector<PoseGraph::Index> keep;
  for (auto v : main.known_log()) {
    const int o = main.owner(v).robot;
    if (std::binary_search(g.members.begin(), g.members.end(), o)) keep.push_back(v);
    else ++req.orphans;
  }
  std::sort(keep.begin(), keep.end(), [&](auto a, auto b) { return ds.id_at(a) < ds.id_at(b); });
  std::vector<char> in(ds.num_vertices(), 0);
  for (auto v : keep) {
    in[v] = 1;
    req.graph.add_vertex(ds.id_at(v), estimate_[v]);
    req.dataset_index.push_back(v);
    req.relaxed.push_back(relaxed_[v]);
    const auto rank = std::lower_bound(g.members.begin(), g.members.end(), main.owner(v).robot) - g.members.begin();
    req.parts.assign(ds.id_at(v), static_cast<int>(rank));
  }
  for (std::size_t e = 0; e < ds.num_edges(); ++e) {
    const auto [a, b] = ds.endpoints(e);
    if (in[a] && in[b]) req.graph.add_edge(ds.edge(e));
  }
  return req;
}

}  // namespace bdpgo
