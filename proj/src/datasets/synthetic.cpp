#include "bdpgo/datasets/synthetic.hpp"

#include "bdpgo/core/errors.hpp"
#include "bdpgo/core/g2o_io.hpp"
#include "bdpgo/core/so3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <random>

namespace bdpgo {
namespace {

constexpr double kSigmaT = 0.05;
constexpr double kSigmaR = 0.01;

struct Trajectory {
  std::vector<Pose> poses;
  std::vector<std::pair<std::size_t, std::size_t>> loop_candidates;
  bool planar = false;
};

RelativePose relative(const Pose& a, const Pose& b) {
  return {a.rotation.transpose() * b.rotation, a.rotation.transpose() * (b.translation - a.translation)};
}

Dataset assemble(const std::string& name, Trajectory traj, std::size_t num_edges, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  auto noisy = [&](const RelativePose& r) {
    Vec3 dt(kSigmaT * noise(rng), kSigmaT * noise(rng), 0.0);
    Vec3 dr(0.0, 0.0, kSigmaR * noise(rng));
    if (!traj.planar) {
      dt.z() = kSigmaT * noise(rng);
      dr.x() = kSigmaR * noise(rng);
      dr.y() = kSigmaR * noise(rng);
    }
    return RelativePose{r.rotation * exp_so3(dr), r.translation + dt};
  };
  auto make_edge = [&](std::size_t i, std::size_t j, EdgeKind kind) {
    const auto m = noisy(relative(traj.poses[i], traj.poses[j]));
    return PoseGraphEdge{KeyframeId{i}, KeyframeId{j}, m.rotation, m.translation, 1.0 / kSigmaT,
                         1.0 / kSigmaR, kind};
  };

  const std::size_t n = traj.poses.size();
  std::vector<PoseGraphEdge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back(make_edge(i, i + 1, EdgeKind::odometry));

  auto& cand = traj.loop_candidates;
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::shuffle(cand.begin(), cand.end(), rng);
  const std::size_t loops = num_edges > edges.size() ? num_edges - edges.size() : 0;
  if (cand.size() < loops) throw DataError(name + ": not enough loop closure candidates");
  cand.resize(loops);
  std::sort(cand.begin(), cand.end());
  for (const auto& [i, j] : cand) edges.push_back(make_edge(i, j, EdgeKind::loop));

  Dataset d;
  d.name = name;
  d.ground_truth = traj.poses;
  // Dead reckoning along the noisy odometry, starting at the true first pose.
  Pose cur = traj.poses.front();
  d.graph.add_vertex(KeyframeId{0}, cur);
  for (std::size_t i = 1; i < n; ++i) {
    const auto& e = edges[i - 1];
    cur.translation = cur.translation + cur.rotation * e.rel_translation;
    cur.rotation = project_to_so3(cur.rotation * e.rel_rotation);
    d.graph.add_vertex(KeyframeId{i}, cur);
  }
  for (const auto& e : edges) d.graph.add_edge(e);
  return d;
}

Pose planar_pose(double x, double y, double yaw) {
  Pose p;
  p.rotation = rot_z(yaw);
  p.translation = Vec3(x, y, 0.0);
  return p;
}

// Pairs (i, j), j >= i + min_gap, whose positions lie within `radius`.
// Positions are bucketed on a grid of cell size `radius`.
void near_pairs(Trajectory& t, double radius, std::size_t min_gap) {
  const auto key = [radius](const Vec3& p) {
    return std::array<long, 3>{std::lround(std::floor(p.x() / radius)), std::lround(std::floor(p.y() / radius)),
                               std::lround(std::floor(p.z() / radius))};
  };
  std::map<std::array<long, 3>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < t.poses.size(); ++i) cells[key(t.poses[i].translation)].push_back(i);
  for (std::size_t i = 0; i < t.poses.size(); ++i) {
    const auto c = key(t.poses[i].translation);
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy)
        for (long dz = -1; dz <= 1; ++dz) {
          auto it = cells.find({c[0] + dx, c[1] + dy, c[2] + dz});
          if (it == cells.end()) continue;
          for (std::size_t j : it->second)
            if (j >= i + min_gap && (t.poses[j].translation - t.poses[i].translation).norm() <= radius)
              t.loop_candidates.emplace_back(i, j);
        }
  }
}

Trajectory intel_like(std::size_t n) {
  Trajectory t;
  t.planar = true;
  const double step = 0.5;
  std::size_t lap = 0;
  while (t.poses.size() < n) {
    const double d = 0.5 * static_cast<double>(lap % 3);
    const double x0 = d, y0 = d, x1 = 25.0 - d, y1 = 12.0 - d;
    const std::array<std::array<double, 4>, 4> sides{{{x0, y0, x1, y0}, {x1, y0, x1, y1}, {x1, y1, x0, y1}, {x0, y1, x0, y0}}};
    for (const auto& s : sides) {
      const double len = std::hypot(s[2] - s[0], s[3] - s[1]);
      const double yaw = std::atan2(s[3] - s[1], s[2] - s[0]);
      const auto steps = static_cast<std::size_t>(std::lround(len / step));
      for (std::size_t k = 0; k < steps && t.poses.size() < n; ++k) {
        const double f = static_cast<double>(k) / static_cast<double>(steps);
        t.poses.push_back(planar_pose(s[0] + f * (s[2] - s[0]), s[1] + f * (s[3] - s[1]), yaw));
      }
    }
    ++lap;
  }
  near_pairs(t, 0.75, 20);
  return t;
}

Trajectory manhattan_like(std::size_t n, std::mt19937_64& rng) {
  Trajectory t;
  t.planar = true;
  const int block = 5;
  const int extent = 40;
  int x = 0, y = 0, dir = 0;  // 0 east, 1 north, 2 west, 3 south
  const int dx[4] = {1, 0, -1, 0};
  const int dy[4] = {0, 1, 0, -1};
  while (t.poses.size() < n) {
    t.poses.push_back(planar_pose(x, y, std::numbers::pi / 2 * dir));
    if (x % block == 0 && y % block == 0) {
      std::vector<int> options;
      for (int d = 0; d < 4; ++d) {
        const int nx = x + dx[d], ny = y + dy[d];
        if (nx < 0 || ny < 0 || nx > extent || ny > extent) continue;
        if (d == (dir + 2) % 4) continue;
        options.push_back(d);
      }
      if (options.empty()) options.push_back((dir + 2) % 4);
      dir = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    }
    x += dx[dir];
    y += dy[dir];
  }
  near_pairs(t, 0.1, 3);
  return t;
}

Trajectory torus_like(std::size_t n) {
  Trajectory t;
  const std::size_t per_ring = 50;
  const std::size_t rings = std::max<std::size_t>(2, (n + per_ring - 1) / per_ring);
  const double big = 20.0, small = 5.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = 2 * std::numbers::pi * static_cast<double>(i / per_ring) / static_cast<double>(rings);
    const double theta = 2 * std::numbers::pi * static_cast<double>(i % per_ring) / per_ring;
    Pose p;
    p.translation = Vec3((big + small * std::cos(theta)) * std::cos(phi),
                         (big + small * std::cos(theta)) * std::sin(phi), small * std::sin(theta));
    p.rotation = rot_z(phi) * exp_so3(Vec3(0.0, -theta, 0.0));
    t.poses.push_back(p);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i / per_ring, b = i % per_ring;
    if (i + per_ring < n) t.loop_candidates.emplace_back(i, i + per_ring);
    else if (a + 1 == rings && b < n) t.loop_candidates.emplace_back(b, i);  // closes the major circle
    if (b + 1 == per_ring) t.loop_candidates.emplace_back(i + 1 - per_ring, i);
  }
  return t;
}

Trajectory grid_like(std::size_t n) {
  Trajectory t;
  const auto side = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n)) - 1e-9));
  std::map<std::array<int, 3>, std::size_t> at;
  double yaw = 0.0;
  for (int z = 0; z < side && t.poses.size() < n; ++z) {
    for (int yy = 0; yy < side && t.poses.size() < n; ++yy) {
      const int y = z % 2 == 0 ? yy : side - 1 - yy;
      for (int xx = 0; xx < side && t.poses.size() < n; ++xx) {
        const int x = (z * side + yy) % 2 == 0 ? xx : side - 1 - xx;
        if (!t.poses.empty()) {
          const Vec3 d = Vec3(x, y, z) - t.poses.back().translation;
          if (d.z() == 0.0) yaw = std::atan2(d.y(), d.x());
        }
        Pose p;
        p.rotation = rot_z(yaw);
        p.translation = Vec3(x, y, z);
        at[{x, y, z}] = t.poses.size();
        t.poses.push_back(p);
      }
    }
  }
  for (const auto& [c, i] : at) {
    for (int axis = 0; axis < 3; ++axis) {
      auto nb = c;
      ++nb[static_cast<std::size_t>(axis)];
      auto it = at.find(nb);
      if (it == at.end()) continue;
      const auto [lo, hi] = std::minmax(i, it->second);
      if (hi != lo + 1) t.loop_candidates.emplace_back(lo, hi);
    }
  }
  return t;
}

struct Shape {
  const char* name;
  std::size_t vertices;
  std::size_t edges;
};
constexpr Shape kShapes[] = {
    {"intel", 1228, 1501}, {"manhattan", 3500, 5548}, {"torus", 5000, 9162}, {"grid", 8000, 22294}};

}  // namespace

std::vector<std::string> synthetic_names() {
  std::vector<std::string> out;
  for (const auto& s : kShapes) out.emplace_back(s.name);
  return out;
}

Dataset make_synthetic(const std::string& name, std::size_t vertices, std::uint64_t seed) {
  const auto* shape = std::find_if(std::begin(kShapes), std::end(kShapes),
                                   [&](const Shape& s) { return name == s.name; });
  if (shape == std::end(kShapes)) throw ParameterError("unknown synthetic dataset '" + name + "'");
  const std::size_t n = vertices == 0 ? shape->vertices : vertices;
  if (n < 2) throw ParameterError("synthetic dataset needs at least two poses");
  const auto m = static_cast<std::size_t>(
      std::llround(static_cast<double>(shape->edges) * static_cast<double>(n) / static_cast<double>(shape->vertices)));
  std::mt19937_64 rng(seed);
  Trajectory t;
  if (name == "intel") t = intel_like(n);
  else if (name == "manhattan") t = manhattan_like(n, rng);
  else if (name == "torus") t = torus_like(n);
  else t = grid_like(n);
  return assemble(name, std::move(t), m, rng);
}

Dataset load_dataset(const std::string& source, std::uint64_t seed) {
  const std::string prefix = "synthetic:";
  if (source.rfind(prefix, 0) == 0) {
    std::string rest = source.substr(prefix.size());
    std::size_t vertices = 0;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      try {
        vertices = std::stoul(rest.substr(colon + 1));
      } catch (const std::exception&) {
        throw ConfigError("bad vertex count in dataset '" + source + "'");
      }
      rest = rest.substr(0, colon);
    }
    return make_synthetic(rest, vertices, seed);
  }
  if (!std::filesystem::exists(source)) throw ConfigError("dataset file not found: " + source);
  Dataset d;
  d.name = std::filesystem::path(source).stem().string();
  d.graph = load_g2o(source);
  return d;
}

}  // namespace bdpgo
