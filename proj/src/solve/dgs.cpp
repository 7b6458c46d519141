#include "bdpgo/solve/dgs.hpp"

#include "bdpgo/core/cost.hpp"
#include "bdpgo/core/errors.hpp"
#include "bdpgo/core/graph_algo.hpp"
#include "bdpgo/core/so3.hpp"
#include "bdpgo/partition/metrics.hpp"
#include "bdpgo/solve/block_gauss_seidel.hpp"

#include <algorithm>
#include <cmath>

namespace bdpgo {
namespace {

// Free variables numbered part by part, ascending id inside a part.
struct Layout {
  std::vector<int> var_of;  // by graph index, -1 for anchors
  std::vector<PoseGraph::Index> vertex_of;
  std::vector<std::size_t> var_offsets;  // per part, size k + 1
};

Layout make_layout(const PoseGraph& graph, std::span<const int> labels, int k,
                   std::span<const PoseGraph::Index> anchors) {
  Layout l;
  l.var_of.assign(graph.num_vertices(), -1);
  std::vector<char> anchored(graph.num_vertices(), 0);
  for (auto a : anchors) anchored[a] = 1;
  std::vector<std::vector<PoseGraph::Index>> per_part(static_cast<std::size_t>(k));
  for (PoseGraph::Index i : graph.canonical_order())
    if (!anchored[i]) per_part[static_cast<std::size_t>(labels[i])].push_back(i);
  l.var_offsets.push_back(0);
  for (const auto& vs : per_part) {
    for (auto i : vs) {
      l.var_of[i] = static_cast<int>(l.vertex_of.size());
      l.vertex_of.push_back(i);
    }
    l.var_offsets.push_back(l.vertex_of.size());
  }
  return l;
}

template <int D>
void add_block(std::vector<Eigen::Triplet<double>>& t, int vr, int vc,
               const Eigen::Matrix<double, D, D>& m) {
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c)
      if (m(r, c) != 0.0) t.emplace_back(D * vr + r, D * vc + c, m(r, c));
}

BlockSystem empty_system(const Layout& l, int dim, int rhs_cols) {
  BlockSystem s;
  s.dim = l.vertex_of.size() * static_cast<std::size_t>(dim);
  s.group = dim;
  for (auto o : l.var_offsets) s.offsets.push_back(o * static_cast<std::size_t>(dim));
  s.rhs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s.dim), rhs_cols);
  return s;
}

// Chordal relaxation in Y_v = R_v^T: edge i->j contributes
// omega_R^2 |Y_j - M Y_i|^2 with M = R~^T.
BlockSystem rotation_system(const PoseGraph& graph, const Layout& l, std::span<const Pose> x0) {
  BlockSystem s = empty_system(l, 3, 3);
  s.triplets.reserve(36 * graph.num_edges());
  const Mat3 eye = Mat3::Identity();
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    const auto& edge = graph.edge(e);
    const auto [i, j] = graph.endpoints(e);
    const double w = edge.weight_R * edge.weight_R;
    const Mat3 m = edge.rel_rotation.transpose();
    const int vi = l.var_of[i];
    const int vj = l.var_of[j];
    if (vj >= 0) add_block<3>(s.triplets, vj, vj, w * eye);
    if (vi >= 0) add_block<3>(s.triplets, vi, vi, w * eye);
    if (vi >= 0 && vj >= 0) {
      add_block<3>(s.triplets, vj, vi, -w * m);
      add_block<3>(s.triplets, vi, vj, -w * m.transpose());
    } else if (vi >= 0) {
      s.rhs.middleRows<3>(3 * vi) += w * m.transpose() * x0[j].rotation.transpose();
    } else if (vj >= 0) {
      s.rhs.middleRows<3>(3 * vj) += w * m * x0[i].rotation.transpose();
    }
  }
  return s;
}

double chordal_objective(const PoseGraph& graph, const Layout& l, std::span<const Pose> x0,
                         const Eigen::MatrixXd& y) {
  auto yv = [&](PoseGraph::Index v) -> Mat3 {
    const int k = l.var_of[v];
    if (k < 0) return x0[v].rotation.transpose();
    return y.middleRows<3>(3 * k);
  };
  double f = 0.0;
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    const auto& edge = graph.edge(e);
    const auto [i, j] = graph.endpoints(e);
    f += edge.weight_R * edge.weight_R *
         (yv(j) - edge.rel_rotation.transpose() * yv(i)).squaredNorm();
  }
  return f;
}

// Gauss-Newton normal equations of the full cost at `lin`, unknowns
// (dtheta, dp) per free vertex.
BlockSystem pose_system(const PoseGraph& graph, const Layout& l, std::span<const Pose> lin) {
  using Mat12x6 = Eigen::Matrix<double, 12, 6>;
  using Vec12 = Eigen::Matrix<double, 12, 1>;
  using Mat6 = Eigen::Matrix<double, 6, 6>;
  BlockSystem s = empty_system(l, 6, 1);
  s.triplets.reserve(144 * graph.num_edges());
  for (std::size_t e = 0; e < graph.num_edges(); ++e) {
    const auto& edge = graph.edge(e);
    const auto [i, j] = graph.endpoints(e);
    const int vi = l.var_of[i];
    const int vj = l.var_of[j];
    if (vi < 0 && vj < 0) continue;
    const Mat3& ri = lin[i].rotation;
    const Mat3& rj = lin[j].rotation;
    const double st = edge.weight_t;
    const double sr = edge.weight_R / std::sqrt(2.0);

    Vec12 r0;
    r0.head<3>() = st * (lin[j].translation - lin[i].translation - ri * edge.rel_translation);
    const Mat3 er = sr * (rj - ri * edge.rel_rotation);
    r0.tail<9>() = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(er.data());

    Mat12x6 ji = Mat12x6::Zero();
    Mat12x6 jj = Mat12x6::Zero();
    ji.block<3, 3>(0, 0) = st * ri * skew(edge.rel_translation);
    ji.block<3, 3>(0, 3) = -st * Mat3::Identity();
    jj.block<3, 3>(0, 3) = st * Mat3::Identity();
    for (int k = 0; k < 3; ++k) {
      const Mat3 gk = skew(Vec3::Unit(k));
      const Mat3 dj = sr * rj * gk;
      const Mat3 di = -sr * ri * gk * edge.rel_rotation;
      jj.block<9, 1>(3, k) = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(dj.data());
      ji.block<9, 1>(3, k) = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(di.data());
    }
    if (vi >= 0) {
      add_block<6>(s.triplets, vi, vi, Mat6(ji.transpose() * ji));
      s.rhs.middleRows<6>(6 * vi) -= ji.transpose() * r0;
    }
    if (vj >= 0) {
      add_block<6>(s.triplets, vj, vj, Mat6(jj.transpose() * jj));
      s.rhs.middleRows<6>(6 * vj) -= jj.transpose() * r0;
    }
    if (vi >= 0 && vj >= 0) {
      add_block<6>(s.triplets, vi, vj, Mat6(ji.transpose() * jj));
      add_block<6>(s.triplets, vj, vi, Mat6(jj.transpose() * ji));
    }
  }
  return s;
}

}  // namespace

std::vector<PoseGraph::Index> gauge_anchors(const PoseGraph& graph) {
  const auto labels = component_labels(graph);
  std::vector<PoseGraph::Index> anchors;
  std::vector<char> done;
  for (PoseGraph::Index i : graph.canonical_order()) {
    const auto c = static_cast<std::size_t>(labels[i]);
    if (c >= done.size()) done.resize(c + 1, 0);
    if (done[c]) continue;
    done[c] = 1;
    anchors.push_back(i);
  }
  return anchors;
}

DgsResult dgs_solve(const PoseGraph& graph, const Partitioning& parts, const DgsOptions& options) {
  return dgs_solve(graph, parts, graph.poses(), options);
}

DgsResult dgs_solve(const PoseGraph& graph, const Partitioning& parts, std::span<const Pose> initial,
                    const DgsOptions& options, std::span<const Mat3> relaxed) {
  if (initial.size() != graph.num_vertices())
    throw ParameterError("initial estimate does not match the graph");
  if (!relaxed.empty() && relaxed.size() != graph.num_vertices())
    throw ParameterError("relaxed rotations do not match the graph");
  if (options.max_iters_per_phase < 1) throw ParameterError("max_iters_per_phase must be >= 1");
  const int k = parts.k();
  const auto labels = parts.labels(graph);
  const auto anchors = gauge_anchors(graph);
  const Layout layout = make_layout(graph, labels, k, anchors);

  DgsResult out;
  out.estimate.assign(initial.begin(), initial.end());

  // Phase one: rotations.
  const BlockGaussSeidel rot_gs(rotation_system(graph, layout, initial), options.exec);
  Eigen::MatrixXd y(static_cast<Eigen::Index>(3 * layout.vertex_of.size()), 3);
  for (std::size_t v = 0; v < layout.vertex_of.size(); ++v) {
    const auto i = layout.vertex_of[v];
    y.middleRows<3>(static_cast<Eigen::Index>(3 * v)) =
        (relaxed.empty() ? initial[i].rotation : relaxed[i]).transpose();
  }
  out.rotation_objective.push_back(chordal_objective(graph, layout, initial, y));
  // Converged once a sweep lowers the chordal objective by less than stop_tol
  // relative to its value before the sweep.
  const auto rot_run = run_gauss_seidel(rot_gs, y, options.max_iters_per_phase, options.stop_tol,
                                        [&](const Eigen::MatrixXd&, const Eigen::MatrixXd& cur) {
                                          const double before = out.rotation_objective.back();
                                          const double after = chordal_objective(graph, layout, initial, cur);
                                          out.rotation_objective.push_back(after);
                                          return std::abs(before - after) / std::max(before, 1e-12);
                                        });
  out.rotation_sweeps = rot_run.sweeps;
  out.relaxed.resize(graph.num_vertices());
  for (auto a : anchors) out.relaxed[a] = initial[a].rotation;
  for (std::size_t v = 0; v < layout.vertex_of.size(); ++v) {
    const auto i = layout.vertex_of[v];
    out.relaxed[i] = y.middleRows<3>(static_cast<Eigen::Index>(3 * v)).transpose();
    out.estimate[i].rotation = project_to_so3(out.relaxed[i]);
  }

  // Phase two: one linearization, solved by the same scheme.
  const BlockGaussSeidel pose_gs(pose_system(graph, layout, out.estimate), options.exec);
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(6 * layout.vertex_of.size()), 1);
  double state_norm2 = 0.0;
  for (auto i : layout.vertex_of) state_norm2 += out.estimate[i].translation.squaredNorm() + 3.0;
  const auto pose_run = run_gauss_seidel(pose_gs, delta, options.max_iters_per_phase, options.stop_tol,
                                         state_change(std::sqrt(state_norm2)));
  out.pose_sweeps = pose_run.sweeps;
  for (std::size_t v = 0; v < layout.vertex_of.size(); ++v) {
    Pose& p = out.estimate[layout.vertex_of[v]];
    const Eigen::Matrix<double, 6, 1> d = delta.middleRows<6>(static_cast<Eigen::Index>(6 * v));
    p.rotation = p.rotation * exp_so3(d.head<3>());
    p.translation += d.tail<3>();
  }

  SolveReport& r = out.report;
  r.solver = "dgs";
  r.k = k;
  const int sweeps = out.rotation_sweeps + out.pose_sweeps;
  std::size_t largest = 0;
  for (int p = 0; p < k; ++p) {
    const std::size_t n = parts.size(p);
    largest = std::max(largest, n);
    r.iterations.push_back(n == 0 ? 0 : sweeps);
    r.wall_times.push_back(sweeps * options.unit_cost * static_cast<double>(n));
  }
  r.time_sim = sweeps * options.unit_cost * static_cast<double>(largest);
  r.utilization = utilization_rate(r.wall_times);
  r.iter_imbalance = iteration_imbalance(r.iterations);
  r.comm_volume_total = static_cast<std::uint64_t>(sweeps) *
                        comm_volume(graph, parts, options.sigma_p, options.exec);
  r.initial_cost = evaluate_cost(graph, initial, options.exec);
  r.final_cost = evaluate_cost(graph, out.estimate, options.exec);
  return out;
}

}  // namespace bdpgo
