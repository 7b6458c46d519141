// Runs the benchmark scenarios and oracle checks and prints one PASS/FAIL
// line per acceptance criterion. Exits non-zero if any criterion fails.

#include "oracles.hpp"
#include "support.hpp"

#include "bdpgo/cli/scenario.hpp"
#include "bdpgo/partition/metrics.hpp"
#include "bdpgo/solve/dgs.hpp"
#include "bdpgo/solve/subproblem.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace bdpgo;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { details.push_back("info " + what); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Timed {
  ScenarioResult result;
  double seconds = 0.0;
};

Timed run(const ScenarioConfig& c, const std::optional<fs::path>& out = std::nullopt) {
  const auto t0 = std::chrono::steady_clock::now();
  Timed t{run_scenario(c, out), 0.0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

const MethodSummary& get(const ScenarioResult& r, Method m) { return *r.find(m); }

// The leading columns of one metrics.csv row.
struct SolveRow {
  std::size_t tick, members, orphans;
};

std::vector<SolveRow> read_solve_rows(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<SolveRow> rows;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tick, main, members, vertices, orphans;
    std::getline(ls, tick, ',');
    std::getline(ls, main, ',');
    std::getline(ls, members, ',');
    std::getline(ls, vertices, ',');
    std::getline(ls, orphans, ',');
    rows.push_back({std::stoul(tick), std::stoul(members), std::stoul(orphans)});
  }
  return rows;
}

}  // namespace

int main() {
  const fs::path scratch = fs::temp_directory_path() / "bdpgo_acceptance";
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  std::vector<Criterion> crit;
  for (const auto& [id, title] : std::vector<std::pair<int, std::string>>{
           {1, "partition balance"},
           {2, "two-stage superiority"},
           {3, "communication"},
           {4, "solver speed and utilization"},
           {5, "solver correctness oracles"},
           {6, "convergence quality"},
           {7, "robustness and coherence"},
           {8, "determinism"},
           {9, "FENNEL overhead"},
       })
    crit.push_back({id, title, true, {}});
  auto& c1 = crit[0];
  auto& c2 = crit[1];
  auto& c3 = crit[2];
  auto& c4 = crit[3];
  auto& c5 = crit[4];
  auto& c6 = crit[5];
  auto& c7 = crit[6];
  auto& c8 = crit[7];
  auto& c9 = crit[8];
  double worst_decomposition = 0.0;

  // Dataset runs: k = 10, dn = 100, gamma = 1.5, nu = 1.1, DGS.
  const std::vector<std::string> datasets{"synthetic:intel", "synthetic:manhattan", "synthetic:grid:3000",
                                          "synthetic:torus"};
  for (const auto& name : datasets) {
    ScenarioConfig cfg;
    cfg.dataset = name;
    const fs::path out = scratch / ("dgs_" + std::to_string(&name - datasets.data()));
    const Timed t = run(cfg, out);
    const auto& base = get(t.result, Method::baseline);
    const auto& nofennel = get(t.result, Method::nofennel);
    const auto& prop = get(t.result, Method::proposed);
    const char* ds = name.c_str();

    c1.check(prop.lambda_imb <= 1.6, fmt("%s proposed mean lambda_imb %.3f <= 1.6", ds, prop.lambda_imb));
    c1.check(base.lambda_imb >= 5.0, fmt("%s baseline mean lambda_imb %.3f >= 5", ds, base.lambda_imb));
    c1.check(t.seconds < 120.0, fmt("%s runtime %.1f s < 120 s", ds, t.seconds));

    c2.check(prop.lambda_imb <= nofennel.lambda_imb,
             fmt("%s lambda_imb proposed %.3f <= nofennel %.3f", ds, prop.lambda_imb, nofennel.lambda_imb));
    c2.check(prop.additional_edges <= nofennel.additional_edges,
             fmt("%s repair edges proposed %.2f <= nofennel %.2f", ds, prop.additional_edges, nofennel.additional_edges));

    if (name.find("torus") != std::string::npos || name.find("manhattan") != std::string::npos) {
      c3.check(prop.comm_volume_total <= base.comm_volume_total / 2,
               fmt("%s comm total proposed %llu <= 0.5 x baseline %llu (%.2fx)", ds,
                   static_cast<unsigned long long>(prop.comm_volume_total),
                   static_cast<unsigned long long>(base.comm_volume_total),
                   static_cast<double>(base.comm_volume_total) / static_cast<double>(prop.comm_volume_total)));
      c3.note(fmt("%s solver exchange (sweeps x comm) proposed %llu baseline %llu", ds,
                  static_cast<unsigned long long>(prop.solver_comm_total),
                  static_cast<unsigned long long>(base.solver_comm_total)));
    }

    const double speedup = base.time_sim / prop.time_sim;
    c4.check(speedup >= 1.5, fmt("%s DGS speedup %.2f >= 1.5", ds, speedup));
    c4.check(prop.utilization >= 0.7, fmt("%s proposed utilization %.3f >= 0.7", ds, prop.utilization));
    c4.check(base.utilization <= 0.55, fmt("%s baseline utilization %.3f <= 0.55", ds, base.utilization));

    c6.check(prop.final_cost <= 1.05 * base.final_cost,
             fmt("%s final cost proposed %.2f <= 1.05 x baseline %.2f", ds, prop.final_cost, base.final_cost));

    for (const auto& m : t.result.methods) worst_decomposition = std::max(worst_decomposition, m.max_decomposition_error);

    if (&name == &datasets.front()) {
      run(cfg, scratch / "dgs_0_again");
      for (const char* m : {"baseline", "nofennel", "proposed"}) {
        c8.check(slurp(out / m / "metrics.csv") == slurp(scratch / "dgs_0_again" / m / "metrics.csv"),
                 fmt("%s %s metrics.csv identical", ds, m));
        c8.check(slurp(out / m / "events.jsonl") == slurp(scratch / "dgs_0_again" / m / "events.jsonl"),
                 fmt("%s %s events.jsonl identical", ds, m));
      }
    }
  }

  // ASAPP iteration imbalance.
  {
    ScenarioConfig cfg;
    cfg.dataset = "synthetic:intel";
    cfg.solver = SolverKind::asapp;
    cfg.methods = {Method::baseline, Method::proposed};
    const Timed t = run(cfg);
    const auto& base = get(t.result, Method::baseline);
    const auto& prop = get(t.result, Method::proposed);
    c4.check(prop.iter_imbalance >= 0.7, fmt("ASAPP proposed iter_imbalance %.3f >= 0.7", prop.iter_imbalance));
    c4.check(base.iter_imbalance <= 0.35, fmt("ASAPP baseline iter_imbalance %.3f <= 0.35", base.iter_imbalance));
    for (const auto& m : t.result.methods) worst_decomposition = std::max(worst_decomposition, m.max_decomposition_error);
  }

  // Adhoc network, with and without a permanent failure mid-run.
  for (bool failing : {false, true}) {
    ScenarioConfig cfg;
    cfg.dataset = "synthetic:intel";
    cfg.mode = NetworkMode::adhoc;
    cfg.radius = 10.0;
    if (failing) cfg.failures = {Failure{3, 300}};
    const std::string label = failing ? "adhoc, robot 3 fails at tick 300" : "adhoc";
    const fs::path out = scratch / (failing ? "adhoc_fail" : "adhoc");
    try {
      const Timed t = run(cfg, out);
      for (const auto& m : t.result.methods) {
        worst_decomposition = std::max(worst_decomposition, m.max_decomposition_error);
        const std::string method = to_string(m.method);
        const auto rows = read_solve_rows(out / method / "metrics.csv");
        std::map<std::size_t, std::size_t> groups_at;
        std::size_t orphans = 0;
        for (const auto& r : rows) {
          ++groups_at[r.tick];
          orphans += r.orphans;
        }
        std::size_t most = 0;
        for (const auto& [tick, n] : groups_at) most = std::max(most, n);
        const std::string line =
            fmt("%s %s: %zu solve events, %zu orphaned keyframes", label.c_str(), method.c_str(), rows.size(), orphans);
        // Fixed ownership cannot hand over the keyframes of an unreachable
        // robot; the baseline drops them from its solves.
        if (m.method == Method::baseline)
          c7.note(line + " (fixed ownership, not reassigned)");
        else
          c7.check(orphans == 0 && m.orphans_total == 0, line);
        c7.check(most >= 2, fmt("%s %s: up to %zu sub-swarms solving in one tick", label.c_str(), method.c_str(), most));
      }
      c7.note(fmt("%s: every solve event built its subproblems (no disconnected pose graph)", label.c_str()));
      if (failing) {
        run(cfg, scratch / "adhoc_fail_again");
        for (const char* m : {"baseline", "nofennel", "proposed"}) {
          c8.check(slurp(out / m / "metrics.csv") == slurp(scratch / "adhoc_fail_again" / m / "metrics.csv"),
                   fmt("%s %s metrics.csv identical", label.c_str(), m));
          c8.check(slurp(out / m / "events.jsonl") == slurp(scratch / "adhoc_fail_again" / m / "events.jsonl"),
                   fmt("%s %s events.jsonl identical", label.c_str(), m));
        }
      }
    } catch (const std::exception& e) {
      c7.check(false, fmt("%s: %s", label.c_str(), e.what()));
    }
  }

  // (a) DGS on 25-pose rings against a centralized solve of the same linearization.
  {
    DgsOptions converged;
    converged.stop_tol = 1e-10;
    converged.max_iters_per_phase = 20000;
    double worst = 0.0, worst_capped = 0.0;
    for (int k : {1, 2, 5})
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PoseGraph g = test::noisy_ring(25, seed);
        const double oracle = evaluate_cost(g, test::centralized_oracle(g));
        const Partitioning p = test::contiguous_parts(g, k);
        worst = std::max(worst, std::abs(dgs_solve(g, p, converged).report.final_cost / oracle - 1.0));
        worst_capped = std::max(worst_capped, std::abs(dgs_solve(g, p).report.final_cost / oracle - 1.0));
      }
    c5.check(worst <= 0.01, fmt("(a) converged DGS, k in {1,2,5}, 10 rings each: worst gap %.2e <= 1%%", worst));
    c5.note(fmt("(a) with the 100-sweep cap and stop_tol 1e-4 the worst gap is %.2e", worst_capped));
  }
  // (b) Riemannian gradient against central differences.
  {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const PoseGraph g = test::random_graph(9, 6, rng);
      const std::vector<PoseGraph::Index> vars{0, 1, 2, 3, 4};
      std::vector<TangentVector> grad(vars.size());
      riemannian_gradient(g, vars, g.poses(), grad, Exec::parallel);
      const auto fd = test::central_differences(g, vars, std::vector<Pose>(g.poses().begin(), g.poses().end()), 1e-6);
      worst = std::max(worst, test::stacked_diff(grad, fd) / test::stacked_norm(fd));
    }
    c5.check(worst <= 1e-5, fmt("(b) gradient vs central differences, 100 subproblems: worst %.2e <= 1e-5", worst));
  }
  // (c) Decomposition, checked at every solve event of every run above.
  c5.check(worst_decomposition <= 1e-9,
           fmt("(c) distributed vs central cost over all solve events: worst %.2e <= 1e-9", worst_decomposition));

  // Communication volume against enumeration on small graphs.
  {
    std::mt19937_64 rng(77);
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 1 + rng() % 50;
      const PoseGraph g = test::random_graph(n, rng() % (2 * n + 1), rng);
      const Partitioning p = test::random_parts(g, 1 + static_cast<int>(rng() % 10), rng);
      const std::uint64_t sigma = 1 + rng() % 3;
      mismatches += comm_volume(g, p, sigma) != test::brute_comm(g, p, sigma) ? 1 : 0;
    }
    c3.check(mismatches == 0, fmt("comm_volume vs enumeration on 1000 graphs, |V| <= 50: %d mismatches", mismatches));
  }

  // Partitioning overhead at |V| = 8000 without solves.
  {
    ScenarioConfig cfg;
    cfg.dataset = "synthetic:grid";
    cfg.methods = {Method::proposed};
    cfg.solve_every = 0;
    const Timed t = run(cfg);
    const auto& prop = get(t.result, Method::proposed);
    c9.check(prop.overhead_ms_per_keyframe <= 10.0,
             fmt("%s (|V| = %zu) mean partitioning cost %.3f ms per keyframe <= 10 ms", cfg.dataset.c_str(),
                 t.result.vertices, prop.overhead_ms_per_keyframe));
    c9.note("host dependent; measured on this machine");
  }

  fs::remove_all(scratch);
  for (const auto& c : crit) {
    std::printf("[%d] %s\n", c.id, c.title.c_str());
    for (const auto& d : c.details) std::printf("    %s\n", d.c_str());
  }
  std::printf("\n");
  bool all = true;
  for (const auto& c : crit) {
    std::printf("criterion %d %s %s\n", c.id, c.pass ? "PASS" : "FAIL", c.title.c_str());
    all = all && c.pass;
  }
  return all ? 0 : 1;
}
