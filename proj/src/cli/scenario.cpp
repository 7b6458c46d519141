#include "bdpgo/cli/scenario.hpp"

#include "bdpgo/core/cost.hpp"
#include "bdpgo/core/errors.hpp"
#include "bdpgo/partition/metrics.hpp"
#include "bdpgo/partition/repair.hpp"
#include "bdpgo/solve/asapp.hpp"
#include "bdpgo/solve/dgs.hpp"
#include "bdpgo/solve/subproblem.hpp"
#include "bdpgo/swarm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace bdpgo {

const MethodSummary* ScenarioResult::find(Method m) const {
  for (const auto& s : methods)
    if (s.method == m) return &s;
  return nullptr;
}

namespace {

struct Accumulator {
  MethodSummary s;
  std::size_t finite_imb = 0;

  void add(const PartitionMetrics& pm, const SolveReport& r, std::size_t unreachable) {
    ++s.solves;
    if (std::isfinite(pm.imbalance)) {
      s.lambda_imb += pm.imbalance;
      ++finite_imb;
    } else {
      ++s.empty_part_events;
    }
    s.lambda_cut += pm.edge_cut_factor;
    s.lambda_vol += pm.comm_volume_factor;
    s.comm_volume += static_cast<double>(pm.raw_comm_volume);
    s.comm_volume_total += pm.raw_comm_volume;
    s.additional_edges += static_cast<double>(pm.additional_edges);
    s.unreachable_components += unreachable;
    s.iterations_max += r.iterations_max();
    s.time_sim += r.time_sim;
    s.utilization += r.utilization;
    s.iter_imbalance += r.iter_imbalance;
    s.initial_cost += r.initial_cost;
    s.final_cost += r.final_cost;
    s.solver_comm_total += r.comm_volume_total;
    if (r.diverged) ++s.diverged;
  }

  MethodSummary finish() {
    if (finite_imb) s.lambda_imb /= static_cast<double>(finite_imb);
    if (s.solves) {
      const double n = static_cast<double>(s.solves);
      for (double* f : {&s.lambda_cut, &s.lambda_vol, &s.comm_volume, &s.additional_edges, &s.iterations_max,
                        &s.time_sim, &s.utilization, &s.iter_imbalance, &s.initial_cost, &s.final_cost})
        *f /= n;
    }
    return s;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

MethodSummary run_method(const ScenarioConfig& cfg, const Dataset& data, const std::vector<KeyframeEvent>& events,
                         Method method, const std::optional<std::filesystem::path>& dir) {
  std::ofstream metrics_out;
  std::ofstream events_out;
  if (dir) {
    std::filesystem::create_directories(*dir);
    metrics_out.open(*dir / "metrics.csv");
    events_out.open(*dir / "events.jsonl");
    metrics_out << kMetricsCsvHeader << '\n';
  }
  EventLog log(dir ? &events_out : nullptr);

  SwarmConfig sc;
  sc.n_robots = cfg.n_robots;
  sc.mode = cfg.mode;
  sc.radius = cfg.radius;
  sc.failures = cfg.failures;
  sc.method = method;
  sc.dn = cfg.dn;
  sc.gamma = cfg.gamma;
  sc.nu = cfg.nu;
  sc.repartition.balance_tol = cfg.balance_tol;
  sc.repartition.migration_weight = cfg.migration_weight;
  sc.repartition.seed = cfg.seed;
  sc.solve_every = cfg.solve_every;

  DgsOptions dopt;
  dopt.max_iters_per_phase = cfg.dgs_max_iters;
  dopt.stop_tol = cfg.dgs_stop_tol;
  dopt.unit_cost = cfg.dgs_unit_cost;
  dopt.sigma_p = cfg.sigma_p;
  AsappOptions aopt;
  aopt.step = cfg.asapp_step;
  aopt.budget_seconds = cfg.asapp_budget;
  aopt.default_rate = cfg.asapp_rate;
  aopt.sigma_p = cfg.sigma_p;

  Accumulator acc;
  acc.s.method = method;
  std::size_t step = 0;

  auto hook = [&](SolveRequest& req) {
    PartitionMetrics pm = compute_metrics(req.graph, req.parts, cfg.sigma_p, 0);
    const auto repair = repair_connectivity(req.graph, req.parts);
    pm.additional_edges = repair.edges.size();
    PoseGraph g = req.graph;
    for (const auto& e : repair.edges) g.add_edge(e);

    std::vector<Subproblem> subs;
    try {
      subs = build_subproblems(g, req.parts);
    } catch (const ConnectivityError& e) {
      throw InvariantError(std::string("solvability: ") + e.what());
    }
    const double central = evaluate_cost(g);
    const double split = distributed_cost(g, subs, g.poses());
    acc.s.max_decomposition_error =
        std::max(acc.s.max_decomposition_error, std::abs(central - split) / std::max(1.0, std::abs(central)));

    aopt.seed = cfg.seed ^ (static_cast<std::uint64_t>(req.tick) << 16) ^ static_cast<std::uint64_t>(req.group.main);
    DgsResult d = dgs_solve(g, req.parts, g.poses(), dopt, req.relaxed);
    req.relaxed_result = std::move(d.relaxed);
    SolveReport report = d.report;
    std::vector<Pose> result = std::move(d.estimate);
    if (cfg.solver == SolverKind::asapp) {
      AsappResult a = asapp_solve(g, req.parts, result, aopt);
      report = a.report;
      result = std::move(a.estimate);
      if (report.diverged)
        log.emit(req.tick, "warning", {{"robot", req.group.main}, {"message", "asapp cost rose more than 10%"}});
    }
    // Costs are reported on the pose graph itself; repair edges only exist
    // to make the subproblems solvable.
    report.initial_cost = evaluate_cost(req.graph);
    report.final_cost = evaluate_cost(req.graph, result);
    req.result = std::move(result);

    acc.add(pm, report, repair.unreachable.size());
    acc.s.orphans_total += req.orphans;
    log.emit(req.tick, "solve",
             {{"main", req.group.main}, {"members", req.group.members}, {"vertices", req.graph.num_vertices()},
              {"orphans", req.orphans}, {"repair_edges", repair.edges.size()},
              {"initial_cost", fmt(report.initial_cost)}, {"final_cost", fmt(report.final_cost)}});
    if (dir) {
      metrics_out << req.tick << ',' << req.group.main << ',' << req.group.members.size() << ','
                  << req.graph.num_vertices() << ',' << req.orphans << ',' << to_csv_row(step, pm) << ','
                  << to_csv_row(report) << '\n';
    }
    ++step;
  };

  SwarmSimulator sim(data, events, sc, &log);
  sim.run(hook);

  MethodSummary s = acc.finish();
  s.keyframes = sim.stats().keyframes;
  s.repartitions = sim.stats().repartitions;
  s.topology_changes = sim.stats().topology_changes;
  s.overhead_ms_per_keyframe =
      s.keyframes ? 1e3 * sim.stats().partition_seconds / static_cast<double>(s.keyframes) : 0.0;
  if (dir) {
    nlohmann::json rep = to_json(s);
    rep["dataset"] = data.name;
    rep["solver"] = to_string(cfg.solver);
    rep["seed"] = cfg.seed;
    rep["n_robots"] = cfg.n_robots;
    std::ofstream(*dir / "report.json") << rep.dump(2) << '\n';
  }
  return s;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out) {
  const Dataset data = load_dataset(config.dataset, config.seed);
  return run_scenario(config, data, out);
}

ScenarioResult run_scenario(const ScenarioConfig& config, const Dataset& data,
                            const std::optional<std::filesystem::path>& out) {
  auto paths = generate_paths(data.graph, config.n_robots, config.seed, config.path_balance);
  const auto events = schedule_stream(data.graph, paths, config.timing);
  if (out) {
    std::filesystem::create_directories(*out);
    std::ofstream csv(*out / "paths.csv");
    write_paths_csv(csv, events);
  }

  ScenarioResult result;
  result.dataset = data.name;
  result.vertices = data.graph.num_vertices();
  result.edges = data.graph.num_edges();
  result.config = config;
  for (Method m : config.methods) {
    std::optional<std::filesystem::path> dir;
    if (out) dir = *out / to_string(m);
    result.methods.push_back(run_method(config, data, events, m, dir));
  }
  if (out) std::ofstream(*out / "report.json") << to_json(result).dump(2) << '\n';
  return result;
}

nlohmann::json to_json(const MethodSummary& s) {
  return {{"method", to_string(s.method)},
          {"solves", s.solves},
          {"keyframes", s.keyframes},
          {"repartitions", s.repartitions},
          {"topology_changes", s.topology_changes},
          {"empty_part_events", s.empty_part_events},
          {"orphans_total", s.orphans_total},
          {"unreachable_components", s.unreachable_components},
          {"lambda_imb", s.lambda_imb},
          {"lambda_cut", s.lambda_cut},
          {"lambda_vol", s.lambda_vol},
          {"comm_volume", s.comm_volume},
          {"comm_volume_total", s.comm_volume_total},
          {"additional_edges", s.additional_edges},
          {"iterations_max", s.iterations_max},
          {"time_sim", s.time_sim},
          {"utilization", s.utilization},
          {"iter_imbalance", s.iter_imbalance},
          {"initial_cost", s.initial_cost},
          {"final_cost", s.final_cost},
          {"solver_comm_total", s.solver_comm_total},
          {"diverged", s.diverged},
          {"max_decomposition_error", s.max_decomposition_error},
          {"overhead_ms_per_keyframe", s.overhead_ms_per_keyframe}};
}

MethodSummary summary_from_json(const nlohmann::json& j) {
  MethodSummary s;
  s.method = parse_method(j.at("method").get<std::string>());
  s.solves = j.at("solves");
  s.keyframes = j.at("keyframes");
  s.repartitions = j.at("repartitions");
  s.topology_changes = j.at("topology_changes");
  s.empty_part_events = j.at("empty_part_events");
  s.orphans_total = j.at("orphans_total");
  s.unreachable_components = j.at("unreachable_components");
  s.lambda_imb = j.at("lambda_imb");
  s.lambda_cut = j.at("lambda_cut");
  s.lambda_vol = j.at("lambda_vol");
  s.comm_volume = j.at("comm_volume");
  s.comm_volume_total = j.at("comm_volume_total");
  s.additional_edges = j.at("additional_edges");
  s.iterations_max = j.at("iterations_max");
  s.time_sim = j.at("time_sim");
  s.utilization = j.at("utilization");
  s.iter_imbalance = j.at("iter_imbalance");
  s.initial_cost = j.at("initial_cost");
  s.final_cost = j.at("final_cost");
  s.solver_comm_total = j.at("solver_comm_total");
  s.diverged = j.at("diverged");
  s.max_decomposition_error = j.at("max_decomposition_error");
  s.overhead_ms_per_keyframe = j.at("overhead_ms_per_keyframe");
  return s;
}

nlohmann::json to_json(const ScenarioResult& r) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& m : r.methods) methods.push_back(to_json(m));
  return {{"dataset", r.dataset}, {"vertices", r.vertices}, {"edges", r.edges},
          {"config", to_json(r.config)}, {"methods", methods}};
}

}  // namespace bdpgo
