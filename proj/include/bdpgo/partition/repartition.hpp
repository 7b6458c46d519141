#pragma once

#include "bdpgo/partition/partitioning.hpp"

#include <cstddef>
#include <cstdint>

namespace bdpgo {

struct RepartitionOptions {
  double balance_tol = 1.05;
  /// Penalty, in cut-edge units, for each vertex placed away from its current part.
  double migration_weight = 0.5;
  std::uint64_t seed = 0;
  int max_passes = 1000;
};

/// floor(balance_tol * ceil(|V| / k)), never below ceil(|V| / k).
std::size_t balance_bound(std::size_t num_vertices, int k, double balance_tol);

struct SizeBounds {
  std::size_t lower = 1;
  std::size_t upper = 0;
};

/// Part sizes accepted by repartition: upper = balance_bound(), lower =
/// floor(floor(|V| / k) / balance_tol), at least 1.
SizeBounds balance_bounds(std::size_t num_vertices, int k, double balance_tol);

/// Balanced repartitioner in the style of unified repartitioning: two
/// candidates are built and the one with the smaller cut + migration_weight *
/// (vertices away from `current`) is returned, the diffusive one on ties.
///
/// Diffusive candidate, starting from `current`:
/// 1. Vertices that `current` does not place (missing, or label >= k) are
///    seeded greedily from their placed neighbours, breadth first.
/// 2. Balance: empty parts first receive one vertex from the largest part.
///    Then, while some part exceeds the upper bound, the best-gain vertex of
///    the largest part moves to a part under it, preferring targets it is
///    adjacent to. Then, while some part is under the lower bound, the
///    smallest part pulls the best-gain vertex from a part above the lower
///    bound, preferring vertices adjacent to it.
/// 3. Refinement: passes of single-vertex moves in a seeded order, each taken
///    when its gain (cut reduction minus migration_weight times the change in
///    the number of vertices away from `current`) is positive and both
///    bounds hold.
///
/// Scratch-remap candidate: recursive breadth-first bisection of the whole
/// graph, parts renamed to the current labels they overlap most, then steps
/// 2 and 3.
///
/// Both refinements strictly decrease the objective, so the result is a local
/// minimum under bound-preserving single-vertex moves. Deterministic for a
/// given (graph, current, k, options). Throws InfeasibleError when k > |V|.
Partitioning repartition(const PoseGraph& graph, const Partitioning& current, int k,
                         const RepartitionOptions& options);

Partitioning repartition(const PoseGraph& graph, const Partitioning& current, int k,
                         double balance_tol, double migration_weight, std::uint64_t seed);

}  // namespace bdpgo
