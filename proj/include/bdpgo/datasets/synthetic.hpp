#pragma once

#include "bdpgo/core/pose_graph.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bdpgo {

struct Dataset {
  std::string name;
  PoseGraph graph;                  ///< vertex values are dead-reckoned from noisy odometry
  std::vector<Pose> ground_truth;  ///< by graph index; empty when unknown
};

/// Stand-ins with the vertex/edge counts of common benchmarks:
///   intel      1228 / 1501   planar, repeated laps of a corridor loop
///   manhattan  3500 / 5548   planar, random walk on a 5 m street grid
///   torus      5000 / 9162   100 rings of 50 poses on a torus
///   grid       8000 / 22294  snake path through a 20^3 lattice
/// `vertices` rescales a dataset (0 keeps the default); the edge count scales
/// with it. Measurements are ground truth plus Gaussian noise with
/// information 1/sigma^2.
Dataset make_synthetic(const std::string& name, std::size_t vertices, std::uint64_t seed);

std::vector<std::string> synthetic_names();

/// "synthetic:<name>[:<vertices>]" or a g2o file path.
Dataset load_dataset(const std::string& source, std::uint64_t seed);

}  // namespace bdpgo
