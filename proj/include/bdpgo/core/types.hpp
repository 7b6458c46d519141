#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace bdpgo {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

/// Identifier of a keyframe (pose-graph vertex). Wraps the dataset vertex id;
/// the owning robot and stream tick travel with the keyframe event.
struct KeyframeId {
  std::uint64_t value = 0;

  constexpr auto operator<=>(const KeyframeId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, KeyframeId id) {
  return os << id.value;
}

struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
};

enum class EdgeKind { odometry, loop, repair };

/// Relative-pose measurement from `from` to `to`:
/// R_to ~ R_from * rel_rotation, p_to ~ p_from + R_from * rel_translation.
struct PoseGraphEdge {
  KeyframeId from;
  KeyframeId to;
  Mat3 rel_rotation = Mat3::Identity();
  Vec3 rel_translation = Vec3::Zero();
  double weight_t = 1.0;
  double weight_R = 1.0;
  EdgeKind kind = EdgeKind::odometry;
};

const char* to_string(EdgeKind kind);

}  // namespace bdpgo

template <>
struct std::hash<bdpgo::KeyframeId> {
  std::size_t operator()(bdpgo::KeyframeId id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};
