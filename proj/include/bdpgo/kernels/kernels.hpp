#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/kernels/exec.hpp"

#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the partition and solve modules. Each
// kernel writes one output slot per work item and never reduces across
// threads, so serial and OpenMP paths agree bit for bit.
namespace bdpgo::kernels {

/// out[e] = edge_cost of edge e at the given by-index poses.
void edge_costs(const PoseGraph& graph, std::span<const Pose> poses, std::span<double> out,
                Exec exec);

/// Left-to-right sum; the fixed order keeps the result independent of threads.
double ordered_sum(std::span<const double> values);

/// out[v] = |D(v)|: number of partitions other than labels[v] holding a
/// neighbour of v.
void foreign_partition_counts(const PoseGraph& graph, std::span<const int> labels,
                              std::span<int> out, Exec exec);

/// Number of edges whose endpoints carry different labels.
std::size_t count_cut_edges(const PoseGraph& graph, std::span<const int> labels, Exec exec);

}  // namespace bdpgo::kernels
