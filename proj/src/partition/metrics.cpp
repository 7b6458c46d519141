#include "bdpgo/partition/metrics.hpp"

#include "bdpgo/kernels/kernels.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace bdpgo {

double imbalance_factor(std::span<const std::size_t> sizes) {
  if (sizes.empty()) return 1.0;
  const auto [mn, mx] = std::minmax_element(sizes.begin(), sizes.end());
  if (*mn == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(*mx) / static_cast<double>(*mn);
}

double imbalance_factor(const Partitioning& parts) { return imbalance_factor(parts.sizes()); }

double edge_cut_factor(const PoseGraph& graph, const Partitioning& parts, Exec exec) {
  if (graph.num_vertices() == 0) return 0.0;
  const auto labels = parts.labels(graph);
  return static_cast<double>(kernels::count_cut_edges(graph, labels, exec)) /
         static_cast<double>(graph.num_vertices());
}

std::vector<std::uint64_t> comm_volume_per_part(const PoseGraph& graph, std::span<const int> labels,
                                                int k, std::uint64_t sigma_p, Exec exec) {
  std::vector<int> foreign(graph.num_vertices());
  kernels::foreign_partition_counts(graph, labels, foreign, exec);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(k), 0);
  for (std::size_t v = 0; v < foreign.size(); ++v) {
    out[static_cast<std::size_t>(labels[v])] += sigma_p * static_cast<std::uint64_t>(foreign[v]);
  }
  return out;
}

std::uint64_t comm_volume(const PoseGraph& graph, const Partitioning& parts, std::uint64_t sigma_p,
                          Exec exec) {
  const auto labels = parts.labels(graph);
  std::uint64_t total = 0;
  for (auto v : comm_volume_per_part(graph, labels, parts.k(), sigma_p, exec)) total += v;
  return total;
}

PartitionMetrics compute_metrics(const PoseGraph& graph, const Partitioning& parts,
                                 std::uint64_t sigma_p, std::size_t additional_edges, Exec exec) {
  PartitionMetrics m;
  const auto labels = parts.labels(graph);
  m.imbalance = imbalance_factor(parts);
  const double nv = static_cast<double>(std::max<std::size_t>(graph.num_vertices(), 1));
  m.edge_cut_factor = static_cast<double>(kernels::count_cut_edges(graph, labels, exec)) / nv;
  for (auto v : comm_volume_per_part(graph, labels, parts.k(), sigma_p, exec)) m.raw_comm_volume += v;
  m.comm_volume_factor = static_cast<double>(m.raw_comm_volume) / (static_cast<double>(sigma_p) * nv);
  m.additional_edges = additional_edges;
  return m;
}

std::string to_csv_row(std::size_t step, const PartitionMetrics& m) {
  std::ostringstream os;
  os.precision(10);
  os << step << ',' << m.imbalance << ',' << m.edge_cut_factor << ',' << m.comm_volume_factor << ','
     << m.raw_comm_volume << ',' << m.additional_edges;
  return os.str();
}

}  // namespace bdpgo
