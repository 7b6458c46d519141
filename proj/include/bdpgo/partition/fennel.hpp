#pragma once

#include "bdpgo/partition/partitioning.hpp"

#include <cstddef>
#include <span>

namespace bdpgo {

/// Streaming-heuristic state. Estimates are stored by role: est_vertices is
/// the expected final vertex count n, est_edges the expected edge count m.
struct FennelParams {
  int k = 1;
  double gamma = 1.5;
  double nu = 1.1;
  double est_vertices = 1.0;
  double est_edges = 1.0;
  std::size_t capacity = 1;  ///< ceil(nu * est_vertices / k)

  /// sqrt(k) * m / n^(3/2)
  double alpha() const;

  static FennelParams make(int k, double est_vertices, double est_edges, double gamma = 1.5,
                           double nu = 1.1);
};

std::size_t fennel_capacity(double nu, double est_vertices, int k);

/// delta_g = |P_i ∩ N(v)| - alpha * gamma * |P_i|^(gamma - 1)
double fennel_score(std::size_t neighbors_in_part, std::size_t part_size, const FennelParams& params);

/// Index-level FENNEL choice. `neighbor_parts` holds the label of each
/// distinct neighbour; labels outside [0, k) are ignored. Parts at capacity are
/// vetoed. Ties go to the smaller part, then the smaller index.
/// Throws CapacityError when every part is at capacity.
int fennel_choose(std::span<const std::size_t> sizes, std::span<const int> neighbor_parts,
                  const FennelParams& params);

/// Assigns unassigned `v` to the chosen part of `parts` and returns that part.
/// Neighbours that are not yet assigned are ignored.
int fennel_assign(KeyframeId v, std::span<const KeyframeId> neighbors, Partitioning& parts,
                  const FennelParams& params);

/// Re-estimates n and m after a repartition:
/// n <- |V| + dn, m <- (|V| + dn) / |V| * |E|, capacity <- ceil(nu * n / k).
/// Throws ParameterError when current_vertices is zero.
FennelParams update_fennel_params(const FennelParams& params, std::size_t current_vertices,
                                  std::size_t current_edges, std::size_t dn);

}  // namespace bdpgo
