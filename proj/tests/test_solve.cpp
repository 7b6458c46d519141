#include "oracles.hpp"
#include "support.hpp"

#include "bdpgo/core/cost.hpp"
#include "bdpgo/core/errors.hpp"
#include "bdpgo/partition/metrics.hpp"
#include "bdpgo/solve/asapp.hpp"
#include "bdpgo/solve/block_gauss_seidel.hpp"
#include "bdpgo/solve/dgs.hpp"
#include "bdpgo/solve/gradient.hpp"
#include "bdpgo/solve/report.hpp"
#include "bdpgo/solve/subproblem.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <functional>

using namespace bdpgo;
using bdpgo::test::kf;

TEST_CASE("riemannian gradient matches central differences on 100 random subproblems") {
  std::mt19937_64 rng(71);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const PoseGraph g = test::random_graph(9, 6, rng);
    std::vector<PoseGraph::Index> vars{0, 1, 2, 3, 4};
    std::vector<TangentVector> grad(vars.size());
    riemannian_gradient(g, vars, g.poses(), grad, Exec::serial);
    const auto fd = test::central_differences(g, vars, std::vector<Pose>(g.poses().begin(), g.poses().end()), 1e-6);
    worst = std::max(worst, test::stacked_diff(grad, fd) / test::stacked_norm(fd));
  }
  CHECK(worst <= 1e-5);
}

TEST_CASE("gradient vanishes at zero residual") {
  const PoseGraph g = test::path_graph(5);
  const auto subs = build_subproblems(g, Partitioning::from_labels(g, std::vector<int>{0, 0, 1, 1, 1}, 2));
  for (const auto& s : subs)
    for (const auto& t : riemannian_gradient(g, s, g.poses())) {
      CHECK(t.rotation.norm() < 1e-12);
      CHECK(t.translation.norm() < 1e-12);
    }
}

TEST_CASE("omega_t scales the translation gradient quadratically") {
  PoseGraph g1, g2;
  for (auto* g : {&g1, &g2}) {
    g->add_vertex(kf(0), Pose{});
    g->add_vertex(kf(1), Pose{Mat3::Identity(), Vec3(0.3, -0.2, 0.5)});
  }
  PoseGraphEdge e;
  e.from = kf(0);
  e.to = kf(1);
  e.rel_translation = Vec3(1, 0, 0);
  e.weight_t = 1.5;
  g1.add_edge(e);
  e.weight_t = 3.0;
  g2.add_edge(e);
  CHECK(evaluate_cost(g2) == doctest::Approx(4.0 * evaluate_cost(g1)));
  const std::vector<PoseGraph::Index> vars{1};
  std::vector<TangentVector> a(1), b(1);
  riemannian_gradient(g1, vars, g1.poses(), a, Exec::serial);
  riemannian_gradient(g2, vars, g2.poses(), b, Exec::serial);
  CHECK((b[0].translation - 4.0 * a[0].translation).norm() < 1e-12);
}

TEST_CASE("subproblems cover every edge once inside or twice across") {
  std::mt19937_64 rng(73);
  const PoseGraph g = test::noisy_ring(40, 1);
  const Partitioning p = test::contiguous_parts(g, 4);
  const auto subs = build_subproblems(g, p);
  REQUIRE(subs.size() == 4);
  std::vector<int> intra(g.num_edges(), 0), inter(g.num_edges(), 0);
  for (const auto& s : subs) {
    CHECK(s.local_vars == p.part_sets()[static_cast<std::size_t>(s.owner)]);
    for (auto e : s.intra_edges) ++intra[e];
    for (const auto& ie : s.inter_edges) ++inter[ie.edge];
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) CHECK(((intra[e] == 1 && inter[e] == 0) || (intra[e] == 0 && inter[e] == 2)));

  const auto single = build_subproblems(g, test::contiguous_parts(g, 1));
  CHECK(single.size() == 1);
  CHECK(single[0].inter_edges.empty());
  CHECK(single[0].intra_edges.size() == g.num_edges());
}

TEST_CASE("split parts are rejected before repair") {
  const PoseGraph g = test::path_graph(3);
  CHECK_THROWS_AS(build_subproblems(g, Partitioning::from_labels(g, std::vector<int>{0, 1, 0}, 2)), ConnectivityError);
}

TEST_CASE("distributed cost equals the global cost") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const PoseGraph g = test::noisy_ring(30 + 5 * static_cast<std::size_t>(trial), static_cast<std::uint64_t>(trial));
    const auto subs = build_subproblems(g, test::contiguous_parts(g, 1 + trial % 6));
    CHECK(std::abs(distributed_cost(g, subs, g.poses()) - evaluate_cost(g)) <= 1e-9 * std::max(1.0, evaluate_cost(g)));
  }
}

TEST_CASE("block Gauss-Seidel converges to the direct solution") {
  std::mt19937_64 rng(83);
  const int n = 60;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (rng() % 5 == 0) m(i, j) = m(j, i) = u(rng);
  for (int i = 0; i < n; ++i) m(i, i) = m.row(i).cwiseAbs().sum() + 1.0;
  BlockSystem sys;
  sys.dim = n;
  sys.offsets = {0, 15, 30, 45, 60};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m(i, j) != 0.0) sys.triplets.emplace_back(i, j, m(i, j));
  sys.rhs = Eigen::MatrixXd::Random(n, 2);
  const Eigen::MatrixXd direct = m.ldlt().solve(sys.rhs);

  Eigen::MatrixXd xs = Eigen::MatrixXd::Zero(n, 2), xp = xs;
  const BlockGaussSeidel serial(sys, Exec::serial), parallel(sys, Exec::parallel);
  const auto rs = run_gauss_seidel(serial, xs, 500, 1e-13);
  const auto rp = run_gauss_seidel(parallel, xp, 500, 1e-13);
  CHECK(rs.converged);
  CHECK(rs.sweeps == rp.sweeps);
  CHECK((xs - direct).norm() <= 1e-9 * direct.norm());
  CHECK(xs == xp);
}

TEST_CASE("dgs solves an exact pair in one sweep per phase") {
  PoseGraph g;
  g.add_vertex(kf(0), Pose{});
  g.add_vertex(kf(1), Pose{rot_z(0.4), Vec3(3, 1, 0)});
  PoseGraphEdge e;
  e.from = kf(0);
  e.to = kf(1);
  e.rel_rotation = rot_z(0.3);
  e.rel_translation = Vec3(1, 2, 0);
  g.add_edge(e);
  const DgsResult r = dgs_solve(g, Partitioning::from_labels(g, std::vector<int>{0, 1}, 2));
  CHECK(r.report.final_cost <= 1e-9);
  CHECK(r.rotation_sweeps == 1);
  CHECK(r.pose_sweeps == 1);
}

TEST_CASE("converged dgs on 25-pose rings stays within 1% of the centralized oracle") {
  // Run to convergence: with the 100-sweep cap the pose phase of a 5-way split
  // is still contracting (about 0.99 per sweep on these rings).
  DgsOptions opt;
  opt.stop_tol = 1e-10;
  opt.max_iters_per_phase = 20000;
  for (int k : {1, 2, 5}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const PoseGraph g = test::noisy_ring(25, seed);
      const double oracle = evaluate_cost(g, test::centralized_oracle(g));
      const DgsResult r = dgs_solve(g, test::contiguous_parts(g, k), opt);
      CAPTURE(k);
      CAPTURE(seed);
      CHECK(r.report.final_cost <= 1.01 * oracle);
      CHECK(r.report.final_cost >= 0.99 * oracle);
      CHECK(r.report.final_cost < r.report.initial_cost);
    }
  }
}

TEST_CASE("dgs phase one never raises the chordal objective") {
  const PoseGraph g = test::noisy_ring(60, 9, 0.1, 0.1);
  const DgsResult r = dgs_solve(g, test::contiguous_parts(g, 6));
  REQUIRE(r.rotation_objective.size() >= 2);
  for (std::size_t i = 1; i < r.rotation_objective.size(); ++i)
    CHECK(r.rotation_objective[i] <= r.rotation_objective[i - 1] * (1 + 1e-12) + 1e-12);
}

TEST_CASE("dgs balanced split is faster than a lopsided one") {
  const PoseGraph g = test::noisy_ring(10, 4);
  const DgsResult even = dgs_solve(g, Partitioning::from_labels(g, std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, 2));
  const DgsResult skew9 = dgs_solve(g, Partitioning::from_labels(g, std::vector<int>{0, 0, 0, 0, 0, 0, 0, 0, 0, 1}, 2));
  const double per_sweep_even = even.report.time_sim / (even.rotation_sweeps + even.pose_sweeps);
  const double per_sweep_skew = skew9.report.time_sim / (skew9.rotation_sweeps + skew9.pose_sweeps);
  CHECK(per_sweep_even < per_sweep_skew);
  CHECK(even.report.utilization > skew9.report.utilization);
}

TEST_CASE("dgs communication is sweeps times the per-sweep volume") {
  const PoseGraph g = test::noisy_ring(50, 5);
  const Partitioning p = test::contiguous_parts(g, 5);
  DgsOptions opt;
  opt.sigma_p = 3;
  const DgsResult r = dgs_solve(g, p, opt);
  CHECK(r.report.comm_volume_total ==
        static_cast<std::uint64_t>(r.rotation_sweeps + r.pose_sweeps) * comm_volume(g, p, 3));
}

TEST_CASE("dgs serial and parallel are bit identical") {
  const PoseGraph g = test::noisy_ring(120, 6);
  const Partitioning p = test::contiguous_parts(g, 8);
  DgsOptions serial, parallel;
  serial.exec = Exec::serial;
  parallel.exec = Exec::parallel;
  const DgsResult a = dgs_solve(g, p, serial), b = dgs_solve(g, p, parallel);
  REQUIRE(a.estimate.size() == b.estimate.size());
  bool same = a.report.final_cost == b.report.final_cost;
  for (std::size_t i = 0; i < a.estimate.size(); ++i)
    same = same && a.estimate[i].rotation == b.estimate[i].rotation && a.estimate[i].translation == b.estimate[i].translation;
  CHECK(same);
}

TEST_CASE("dgs warm start from relaxed blocks reaches the same optimum") {
  const PoseGraph g = test::noisy_ring(40, 8);
  const Partitioning p = test::contiguous_parts(g, 4);
  const DgsResult cold = dgs_solve(g, p);
  const DgsResult warm = dgs_solve(g, p, g.poses(), {}, cold.relaxed);
  CHECK(warm.rotation_sweeps <= cold.rotation_sweeps);
  CHECK(warm.report.final_cost == doctest::Approx(cold.report.final_cost).epsilon(0.01));
  const std::vector<Mat3> wrong(3);
  CHECK_THROWS_AS(dgs_solve(g, p, g.poses(), {}, wrong), ParameterError);
}

TEST_CASE("asapp leaves a zero-residual graph unchanged") {
  const PoseGraph g = test::path_graph(6);
  const AsappResult r = asapp_solve(g, test::contiguous_parts(g, 2), g.poses());
  for (std::size_t i = 0; i < r.estimate.size(); ++i) {
    CHECK((r.estimate[i].translation - g.pose_at(static_cast<PoseGraph::Index>(i)).translation).norm() < 1e-12);
    CHECK((r.estimate[i].rotation - g.pose_at(static_cast<PoseGraph::Index>(i)).rotation).norm() < 1e-12);
  }
  AsappOptions bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(asapp_solve(g, test::contiguous_parts(g, 2), g.poses(), bad), ParameterError);
}

TEST_CASE("asapp single rotation cost decreases every iteration") {
  PoseGraph g;
  g.add_vertex(kf(0), Pose{});
  g.add_vertex(kf(1), Pose{rot_z(0.2) * exp_so3(Vec3(0.05, -0.03, 0.0)), Vec3(1, 0, 0)});
  PoseGraphEdge e;
  e.from = kf(0);
  e.to = kf(1);
  e.rel_translation = Vec3(1, 0, 0);
  e.weight_t = 10;
  e.weight_R = 10;
  g.add_edge(e);
  AsappOptions opt;
  opt.record_cost_trace = true;
  opt.budget_seconds = 0.05;
  // Robot 0 owns the anchor side and never moves: give it no work by rate.
  const AsappResult r = asapp_solve(g, Partitioning::from_labels(g, std::vector<int>{0, 0}, 1), g.poses(), opt);
  REQUIRE(r.cost_trace.size() > 10);
  double prev = evaluate_cost(g);
  bool decreasing = true;
  for (double c : r.cost_trace) {
    decreasing = decreasing && c < prev;
    prev = c;
  }
  CHECK(decreasing);
}

TEST_CASE("asapp iteration imbalance follows block sizes") {
  const PoseGraph g = test::noisy_ring(100, 2);
  std::vector<int> labels(100, 0);
  for (std::size_t i = 90; i < 100; ++i) labels[i] = 1;
  const AsappResult r = asapp_solve(g, Partitioning::from_labels(g, labels, 2), g.poses());
  CHECK(r.report.iter_imbalance == doctest::Approx(10.0 / 90.0).epsilon(0.02));
}

TEST_CASE("asapp with one robot reaches a stationary point") {
  std::mt19937_64 rng(89);
  PoseGraph g;
  std::vector<Pose> truth(5);
  for (std::size_t i = 0; i < 5; ++i) truth[i] = Pose{test::random_rotation(rng, 0.5), test::random_vec(rng, 2.0)};
  for (std::size_t i = 0; i < 5; ++i) g.add_vertex(kf(i), truth[i]);
  for (std::size_t i = 0; i < 5; ++i) g.add_edge(test::measured(kf(i), kf((i + 1) % 5), truth[i], truth[(i + 1) % 5], rng, 1.0, 0.1));
  AsappOptions opt;
  opt.step = 1e-3;
  opt.budget_seconds = 50.0;
  const AsappResult r = asapp_solve(g, test::contiguous_parts(g, 1), g.poses(), opt);
  const std::vector<PoseGraph::Index> vars{0, 1, 2, 3, 4};
  std::vector<TangentVector> grad(5);
  riemannian_gradient(g, vars, r.estimate, grad, Exec::serial);
  CHECK(test::stacked_norm(grad) < 1e-6);
}

TEST_CASE("asapp serial and parallel are bit identical") {
  const PoseGraph g = test::noisy_ring(80, 3);
  const Partitioning p = test::contiguous_parts(g, 4);
  AsappOptions a, b;
  a.exec = Exec::serial;
  b.exec = Exec::parallel;
  a.budget_seconds = b.budget_seconds = 0.5;
  const AsappResult ra = asapp_solve(g, p, g.poses(), a), rb = asapp_solve(g, p, g.poses(), b);
  bool same = ra.report.final_cost == rb.report.final_cost;
  for (std::size_t i = 0; i < ra.estimate.size(); ++i)
    same = same && ra.estimate[i].translation == rb.estimate[i].translation && ra.estimate[i].rotation == rb.estimate[i].rotation;
  CHECK(same);
}

TEST_CASE("report helpers") {
  CHECK(utilization_rate(std::vector<double>{1, 1, 1}) == doctest::Approx(1.0));
  CHECK(utilization_rate(std::vector<double>{2, 1}) == doctest::Approx(0.75));
  CHECK(iteration_imbalance(std::vector<int>{10, 90, 0}) == doctest::Approx(10.0 / 90.0));
  SolveReport r;
  r.solver = "dgs";
  r.k = 2;
  r.iterations = {3, 5};
  CHECK(r.iterations_max() == 5);
  CHECK(std::string(kSolveCsvHeader) == "solver,k,iterations_max,time_sim,utilization,iter_imbalance,initial_cost,final_cost,comm_total");
  CHECK(to_csv_row(r).rfind("dgs,2,5,", 0) == 0);
}
