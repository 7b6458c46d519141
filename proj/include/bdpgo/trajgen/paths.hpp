#pragma once

#include "bdpgo/core/pose_graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bdpgo {

struct RobotPath {
  int robot = 0;
  std::vector<KeyframeId> keyframes;
  std::vector<std::size_t> ticks;  ///< filled by schedule_stream
};

enum class PathBalance {
  even,    ///< lengths |V|/n rounded, differing by at most one
  uneven,  ///< lengths from uniform random breakpoints, like independent mTSP tours
};

PathBalance parse_path_balance(const std::string& s);
std::string to_string(PathBalance b);

/// Target length per robot; sums to num_vertices, every entry >= 1.
std::vector<std::size_t> path_lengths(std::size_t num_vertices, int n_robots, PathBalance balance,
                                      std::uint64_t seed);

/// Greedy stand-in for an mTSP solver. Seeds are spread by farthest-point
/// selection over hop distance from a random start. Robots then take turns
/// appending the unvisited vertex nearest to their path's end, searched
/// breadth first through the path's own vertices; a robot whose path has no
/// unvisited neighbour left teleports to the smallest unvisited id.
/// Throws InfeasibleError when n_robots > |V| or n_robots < 1.
std::vector<RobotPath> generate_paths(const PoseGraph& graph, int n_robots, std::uint64_t seed,
                                      PathBalance balance = PathBalance::even);

}  // namespace bdpgo
