#include "bdpgo/kernels/kernels.hpp"

#include "bdpgo/core/cost.hpp"

#include <algorithm>
#include <vector>

namespace bdpgo::kernels {

void edge_costs(const PoseGraph& graph, std::span<const Pose> poses, std::span<double> out,
                Exec exec) {
  const auto n = static_cast<std::ptrdiff_t>(graph.num_edges());
  auto body = [&](std::ptrdiff_t e) {
    const auto [i, j] = graph.endpoints(static_cast<std::size_t>(e));
    out[e] = edge_cost(graph.edge(static_cast<std::size_t>(e)), poses[i], poses[j]);
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t e = 0; e < n; ++e) body(e);
  } else {
    for (std::ptrdiff_t e = 0; e < n; ++e) body(e);
  }
}

double ordered_sum(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

void foreign_partition_counts(const PoseGraph& graph, std::span<const int> labels,
                              std::span<int> out, Exec exec) {
  const auto n = static_cast<std::ptrdiff_t>(graph.num_vertices());
  auto body = [&](std::ptrdiff_t v, std::vector<int>& scratch) {
    scratch.clear();
    const int own = labels[v];
    for (const auto& inc : graph.incident(static_cast<PoseGraph::Index>(v))) {
      const int q = labels[inc.neighbor];
      if (q != own) scratch.push_back(q);
    }
    std::sort(scratch.begin(), scratch.end());
    out[v] = static_cast<int>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
  };
  if (exec == Exec::parallel) {
#pragma omp parallel
    {
      std::vector<int> scratch;
#pragma omp for schedule(static)
      for (std::ptrdiff_t v = 0; v < n; ++v) body(v, scratch);
    }
  } else {
    std::vector<int> scratch;
    for (std::ptrdiff_t v = 0; v < n; ++v) body(v, scratch);
  }
}

std::size_t count_cut_edges(const PoseGraph& graph, std::span<const int> labels, Exec exec) {
  const auto n = static_cast<std::ptrdiff_t>(graph.num_edges());
  std::size_t cut = 0;
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(+ : cut)
    for (std::ptrdiff_t e = 0; e < n; ++e) {
      const auto [i, j] = graph.endpoints(static_cast<std::size_t>(e));
      cut += labels[i] != labels[j] ? 1u : 0u;
    }
  } else {
    for (std::ptrdiff_t e = 0; e < n; ++e) {
      const auto [i, j] = graph.endpoints(static_cast<std::size_t>(e));
      cut += labels[i] != labels[j] ? 1u : 0u;
    }
  }
  return cut;
}

}  // namespace bdpgo::kernels
