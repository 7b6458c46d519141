#pragma once

#include "bdpgo/core/pose_graph.hpp"
#include "bdpgo/core/so3.hpp"
#include "bdpgo/partition/partitioning.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace bdpgo::test {

inline KeyframeId kf(std::uint64_t v) { return KeyframeId{v}; }

inline Mat3 random_rotation(std::mt19937_64& rng, double scale = 3.0) {
  std::normal_distribution<double> n(0.0, scale);
  return exp_so3(Vec3(n(rng), n(rng), n(rng)));
}

inline Vec3 random_vec(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return Vec3(n(rng), n(rng), n(rng));
}

inline PoseGraphEdge measured(KeyframeId a, KeyframeId b, const Pose& pa, const Pose& pb, std::mt19937_64& rng,
                              double sigma_t, double sigma_r, EdgeKind kind = EdgeKind::odometry) {
  PoseGraphEdge e;
  e.from = a;
  e.to = b;
  e.rel_rotation = pa.rotation.transpose() * pb.rotation * exp_so3(random_vec(rng, sigma_r));
  e.rel_translation = pa.rotation.transpose() * (pb.translation - pa.translation) + random_vec(rng, sigma_t);
  e.weight_t = 1.0 / std::max(sigma_t, 0.05);
  e.weight_R = 1.0 / std::max(sigma_r, 0.05);
  e.kind = kind;
  return e;
}

/// Ring of n poses on a circle of radius 5 with odometry around it and a
/// few chords; vertex values are perturbed ground truth.
inline PoseGraph noisy_ring(std::size_t n, std::uint64_t seed, double sigma_t = 0.05, double sigma_r = 0.02) {
  std::mt19937_64 rng(seed);
  std::vector<Pose> truth(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = 2.0 * 3.141592653589793 * static_cast<double>(i) / static_cast<double>(n);
    truth[i].rotation = rot_z(th + 1.5707963267948966);
    truth[i].translation = Vec3(5.0 * std::cos(th), 5.0 * std::sin(th), 0.0);
  }
  PoseGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    Pose p = truth[i];
    p.rotation = p.rotation * exp_so3(random_vec(rng, 0.05));
    p.translation += random_vec(rng, 0.2);
    g.add_vertex(kf(i), p);
  }
  for (std::size_t i = 0; i < n; ++i) g.add_edge(measured(kf(i), kf((i + 1) % n), truth[i], truth[(i + 1) % n], rng, sigma_t, sigma_r));
  for (std::size_t i = 0; i + n / 2 < n; i += 5)
    g.add_edge(measured(kf(i), kf(i + n / 2), truth[i], truth[i + n / 2], rng, sigma_t, sigma_r, EdgeKind::loop));
  return g;
}

/// Random connected graph: a random spanning tree plus extra edges. Poses
/// are random.
inline PoseGraph random_graph(std::size_t n, std::size_t extra, std::mt19937_64& rng) {
  PoseGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(kf(i), Pose{random_rotation(rng), random_vec(rng, 3.0)});
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    const auto a = pick(rng);
    g.add_edge(measured(kf(a), kf(i), g.pose(kf(a)), g.pose(kf(i)), rng, 0.3, 0.3));
  }
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  for (std::size_t e = 0; e < extra && n > 1; ++e) {
    const auto a = any(rng), b = any(rng);
    if (a != b) g.add_edge(measured(kf(a), kf(b), g.pose(kf(a)), g.pose(kf(b)), rng, 0.3, 0.3, EdgeKind::loop));
  }
  return g;
}

inline Partitioning random_parts(const PoseGraph& g, int k, std::mt19937_64& rng) {
  Partitioning p(k);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (auto id : g.ids()) p.assign(id, pick(rng));
  return p;
}

/// Contiguous split of ids 0..n-1 into k nearly equal runs.
inline Partitioning contiguous_parts(const PoseGraph& g, int k) {
  Partitioning p(k);
  const std::size_t n = g.num_vertices();
  for (std::size_t i = 0; i < n; ++i) p.assign(g.id_at(static_cast<PoseGraph::Index>(i)), static_cast<int>(i * static_cast<std::size_t>(k) / n));
  return p;
}

/// Path graph 1..n with unit odometry along x.
inline PoseGraph path_graph(std::size_t n) {
  PoseGraph g;
  for (std::size_t i = 1; i <= n; ++i) g.add_vertex(kf(i), Pose{Mat3::Identity(), Vec3(static_cast<double>(i), 0, 0)});
  for (std::size_t i = 1; i < n; ++i) {
    PoseGraphEdge e;
    e.from = kf(i);
    e.to = kf(i + 1);
    e.rel_translation = Vec3(1, 0, 0);
    g.add_edge(e);
  }
  return g;
}

}  // namespace bdpgo::test
