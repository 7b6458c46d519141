#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/kernels/exec.hpp"
#include "bdpgo/solve/subproblem.hpp"

#include <span>
#include <vector>

namespace bdpgo {

struct TangentVector {
  Vec3 rotation = Vec3::Zero();     ///< coordinates for the retraction R Exp(xi)
  Vec3 translation = Vec3::Zero();
};

/// Gradient of the subproblem's local cost (intra and inter edges) with
/// respect to each local variable, in local_vars order. The rotation part is
/// the Euclidean gradient G projected to the tangent space at R, i.e. the
/// skew part of R^T G expressed as a 3-vector and scaled so that
/// f(R Exp(xi)) = f(R) + <g, xi> + O(|xi|^2). `estimate` is by graph index
/// and must hold current values for remote endpoints as well.
std::vector<TangentVector> riemannian_gradient(const PoseGraph& graph, const Subproblem& sub,
                                               std::span<const Pose> estimate,
                                               Exec exec = Exec::serial);

/// Same, for an explicit list of local vertex indices.
void riemannian_gradient(const PoseGraph& graph, std::span<const PoseGraph::Index> vars,
                         std::span<const Pose> estimate, std::span<TangentVector> out, Exec exec);

}  // namespace bdpgo
