#include "bdpgo/partition/fennel.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace bdpgo {

double FennelParams::alpha() const {
  return std::sqrt(static_cast<double>(k)) * est_edges / std::pow(est_vertices, 1.5);
}

std::size_t fennel_capacity(double nu, double est_vertices, int k) {
  // The epsilon keeps exact products such as 1.1 * 200 / 10 from rounding up.
  const double raw = nu * est_vertices / static_cast<double>(k);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(raw - 1e-9)));
}

FennelParams FennelParams::make(int k, double est_vertices, double est_edges, double gamma,
                                double nu) {
  if (k < 1) throw ParameterError("FENNEL needs k >= 1");
  if (!(gamma > 1.0)) throw ParameterError("FENNEL needs gamma > 1");
  if (!(nu >= 1.0)) throw ParameterError("FENNEL needs nu >= 1");
  if (!(est_vertices > 0.0)) throw ParameterError("FENNEL needs a positive vertex estimate");
  FennelParams p;
  p.k = k;
  p.gamma = gamma;
  p.nu = nu;
  p.est_vertices = est_vertices;
  p.est_edges = est_edges;
  p.capacity = fennel_capacity(nu, est_vertices, k);
  return p;
}

double fennel_score(std::size_t neighbors_in_part, std::size_t part_size,
                    const FennelParams& params) {
  return static_cast<double>(neighbors_in_part) -
         params.alpha() * params.gamma *
             std::pow(static_cast<double>(part_size), params.gamma - 1.0);
}

int fennel_choose(std::span<const std::size_t> sizes, std::span<const int> neighbor_parts,
                  const FennelParams& params) {
  const int k = static_cast<int>(sizes.size());
  std::vector<std::size_t> hits(sizes.size(), 0);
  for (int q : neighbor_parts) {
    if (q >= 0 && q < k) ++hits[static_cast<std::size_t>(q)];
  }
  int best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    const auto s = sizes[static_cast<std::size_t>(i)];
    if (s >= params.capacity) continue;
    const double score = fennel_score(hits[static_cast<std::size_t>(i)], s, params);
    if (best < 0 || score > best_score ||
        (score == best_score && s < sizes[static_cast<std::size_t>(best)])) {
      best = i;
      best_score = score;
    }
  }
  if (best < 0) throw CapacityError("every partition is at capacity; repartition required");
  return best;
}

int fennel_assign(KeyframeId v, std::span<const KeyframeId> neighbors, Partitioning& parts,
                  const FennelParams& params) {
  if (parts.contains(v)) throw ParameterError("vertex " + std::to_string(v.value) + " is already assigned");
  std::vector<KeyframeId> distinct(neighbors.begin(), neighbors.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> labels;
  labels.reserve(distinct.size());
  for (auto n : distinct) {
    if (auto p = parts.part_of(n)) labels.push_back(*p);
  }
  const int chosen = fennel_choose(parts.sizes(), labels, params);
  parts.assign(v, chosen);
  return chosen;
}

FennelParams update_fennel_params(const FennelParams& params, std::size_t current_vertices,
                                  std::size_t current_edges, std::size_t dn) {
  if (current_vertices == 0) throw ParameterError("FENNEL update needs a non-empty graph");
  FennelParams out = params;
  const double v = static_cast<double>(current_vertices);
  out.est_vertices = v + static_cast<double>(dn);
  out.est_edges = out.est_vertices / v * static_cast<double>(current_edges);
  out.capacity = fennel_capacity(out.nu, out.est_vertices, out.k);
  return out;
}

}  // namespace bdpgo
