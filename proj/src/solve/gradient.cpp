#include "bdpgo/solve/gradient.hpp"

#include "bdpgo/core/so3.hpp"

namespace bdpgo {
namespace {

// Every edge incident to a local vertex is either intra or inter for its
// owner, so walking the incidence list covers exactly the local cost.
TangentVector gradient_at(const PoseGraph& graph, PoseGraph::Index v, std::span<const Pose> x) {
  Mat3 g_rot = Mat3::Zero();
  Vec3 g_trans = Vec3::Zero();
  for (const auto& inc : graph.incident(v)) {
    const auto& edge = graph.edge(inc.edge);
    const auto [i, j] = graph.endpoints(inc.edge);
    const double wt = edge.weight_t * edge.weight_t;
    const double wr = edge.weight_R * edge.weight_R;
    const Vec3 et = x[j].translation - x[i].translation - x[i].rotation * edge.rel_translation;
    const Mat3 er = x[j].rotation - x[i].rotation * edge.rel_rotation;
    if (v == j) {
      g_trans += 2.0 * wt * et;
      g_rot += wr * er;
    } else {
      g_trans -= 2.0 * wt * et;
      g_rot -= 2.0 * wt * et * edge.rel_translation.transpose() + wr * er * edge.rel_rotation.transpose();
    }
  }
  // d/dxi f(R Exp(xi)) at 0 is 2 vee(R^T G).
  return {2.0 * vee(x[v].rotation.transpose() * g_rot), g_trans};
}

}  // namespace

void riemannian_gradient(const PoseGraph& graph, std::span<const PoseGraph::Index> vars,
                         std::span<const Pose> estimate, std::span<TangentVector> out, Exec exec) {
  const auto n = static_cast<std::ptrdiff_t>(vars.size());
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k)
      out[static_cast<std::size_t>(k)] = gradient_at(graph, vars[static_cast<std::size_t>(k)], estimate);
  } else {
    for (std::ptrdiff_t k = 0; k < n; ++k)
      out[static_cast<std::size_t>(k)] = gradient_at(graph, vars[static_cast<std::size_t>(k)], estimate);
  }
}

std::vector<TangentVector> riemannian_gradient(const PoseGraph& graph, const Subproblem& sub,
                                               std::span<const Pose> estimate, Exec exec) {
  std::vector<PoseGraph::Index> vars;
  vars.reserve(sub.local_vars.size());
  for (auto id : sub.local_vars) vars.push_back(graph.index_of(id));
  std::vector<TangentVector> out(vars.size());
  riemannian_gradient(graph, vars, estimate, out, exec);
  return out;
}

}  // namespace bdpgo
