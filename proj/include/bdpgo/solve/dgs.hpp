#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/kernels/exec.hpp"
#include "bdpgo/partition/partitioning.hpp"
#include "bdpgo/solve/report.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bdpgo {

struct DgsOptions {
  int max_iters_per_phase = 100;
  double stop_tol = 1e-4;
  /// Simulated seconds one robot spends per vertex and sweep.
  double unit_cost = 1e-6;
  std::uint64_t sigma_p = 1;
  Exec exec = Exec::parallel;
};

struct DgsResult {
  std::vector<Pose> estimate;  ///< by graph index
  SolveReport report;
  int rotation_sweeps = 0;
  int pose_sweeps = 0;
  /// Chordal rotation objective before the first and after every phase-one sweep.
  std::vector<double> rotation_objective;
  /// Phase-one blocks before projection, by graph index (anchors hold their
  /// fixed rotation). Passing them back as `relaxed` warm-starts the next solve.
  std::vector<Mat3> relaxed;
};

/// Smallest-id vertex of every connected component; these hold the gauge.
std::vector<PoseGraph::Index> gauge_anchors(const PoseGraph& graph);

/// Two-phase distributed Gauss-Seidel over the parts of `parts`.
///
/// Phase one relaxes every rotation to an unconstrained 3x3 block and
/// minimizes sum omega_R^2 |R_j - R_i R~|_F^2 by block Gauss-Seidel, then
/// projects each block back to SO(3). Phase two linearizes the full cost once
/// at those rotations (rotation perturbation R Exp(dtheta), translation
/// increment) and solves the normal equations by the same scheme, measuring
/// the relative change of the increment against the pose state. Anchors from
/// gauge_anchors() stay fixed. Simulated time per sweep is
/// unit_cost * (largest part), and each sweep exchanges comm(P) once.
///
/// Phase one starts from `relaxed` when it is given (one block per vertex),
/// otherwise from the rotations of `initial`.
DgsResult dgs_solve(const PoseGraph& graph, const Partitioning& parts, std::span<const Pose> initial,
                    const DgsOptions& options = {}, std::span<const Mat3> relaxed = {});

/// Starts from the graph's own vertex values.
DgsResult dgs_solve(const PoseGraph& graph, const Partitioning& parts, const DgsOptions& options = {});

}  // namespace bdpgo
