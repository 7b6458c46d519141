#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/kernels/exec.hpp"
#include "bdpgo/partition/partitioning.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bdpgo {

struct PartitionMetrics {
  double imbalance = 1.0;           ///< max |P_i| / min |P_j|
  double edge_cut_factor = 0.0;     ///< |E_cut| / |V|
  double comm_volume_factor = 0.0;  ///< comm(P) / (sigma_p |V|)
  std::uint64_t raw_comm_volume = 0;
  std::size_t additional_edges = 0;
};

/// max / min part size; +infinity when a part is empty.
double imbalance_factor(std::span<const std::size_t> sizes);
double imbalance_factor(const Partitioning& parts);

double edge_cut_factor(const PoseGraph& graph, const Partitioning& parts, Exec exec = Exec::parallel);

/// sigma_p * sum_v |D(v)|.
std::uint64_t comm_volume(const PoseGraph& graph, const Partitioning& parts, std::uint64_t sigma_p,
                          Exec exec = Exec::parallel);

/// comm_i(P_i) for every part, from per-index labels.
std::vector<std::uint64_t> comm_volume_per_part(const PoseGraph& graph, std::span<const int> labels,
                                                int k, std::uint64_t sigma_p,
                                                Exec exec = Exec::parallel);

PartitionMetrics compute_metrics(const PoseGraph& graph, const Partitioning& parts,
                                 std::uint64_t sigma_p, std::size_t additional_edges,
                                 Exec exec = Exec::parallel);

/// Column order of the per-step metrics CSV.
inline constexpr const char* kPartitionCsvHeader =
    "step,lambda_imb,lambda_cut,lambda_vol,comm_volume,additional_edges";
std::string to_csv_row(std::size_t step, const PartitionMetrics& m);

}  // namespace bdpgo
