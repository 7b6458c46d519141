#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/kernels/exec.hpp"
#include "bdpgo/partition/partitioning.hpp"
#include "bdpgo/solve/report.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bdpgo {

struct AsappOptions {
  double step = 1e-5;
  double budget_seconds = 5.0;  ///< simulated
  /// Vertex updates per simulated second for each robot; robots beyond the
  /// vector's size use default_rate.
  std::vector<double> vertex_rate;
  double default_rate = 2000.0;
  std::uint64_t seed = 0;
  std::uint64_t sigma_p = 1;
  Exec exec = Exec::parallel;
  bool record_cost_trace = false;
};

struct AsappResult {
  std::vector<Pose> estimate;  ///< by graph index
  SolveReport report;
  std::vector<double> cost_trace;  ///< global cost after every iteration when recorded
};

/// Asynchronous Riemannian gradient descent. Robot r runs
/// max(1, floor(rate_r * budget / |P_r|)) iterations, each finishing at a
/// multiple of its (seeded, slightly jittered) period; iterations from all
/// robots are replayed in completion order, each reading the latest published
/// poses and publishing its own block afterwards. Translation steps are
/// -step * gradient, rotation steps R Exp(-step * g).
/// Throws ParameterError when step <= 0. A final cost above 1.1x the initial
/// cost sets report.diverged.
AsappResult asapp_solve(const PoseGraph& graph, const Partitioning& parts, std::span<const Pose> initial,
                        const AsappOptions& options = {});

}  // namespace bdpgo
