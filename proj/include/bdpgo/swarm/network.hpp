#pragma once

#include "bdpgo/core/types.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bdpgo {

enum class NetworkMode { infrastructure, adhoc };

NetworkMode parse_network_mode(const std::string& s);
std::string to_string(NetworkMode m);

struct Failure {
  int robot = 0;
  std::size_t tick = 0;
};

struct SubSwarm {
  std::vector<int> members;  ///< ascending
  int main = 0;              ///< smallest member
  bool operator==(const SubSwarm&) const = default;
};

/// Wireless topology. In adhoc mode two live robots are linked when their
/// current positions are within `radius`; sub-swarms are the connected
/// components of that relation. Failures are permanent.
class NetworkModel {
 public:
  NetworkModel(int n_robots, NetworkMode mode, double radius = 10.0, std::vector<Failure> failures = {});

  int num_robots() const { return static_cast<int>(positions_.size()); }
  NetworkMode mode() const { return mode_; }
  void set_position(int robot, const Vec3& p) { positions_[static_cast<std::size_t>(robot)] = p; }
  const Vec3& position(int robot) const { return positions_[static_cast<std::size_t>(robot)]; }
  const std::vector<Failure>& failures() const { return failures_; }

  bool alive(int robot, std::size_t tick) const;
  bool linked(int a, int b, std::size_t tick) const;
  /// Ordered by main id. Failed robots belong to none.
  std::vector<SubSwarm> sub_swarms(std::size_t tick) const;

 private:
  NetworkMode mode_;
  double radius_;
  std::vector<Vec3> positions_;
  std::vector<Failure> failures_;
};

}  // namespace bdpgo
