#include "bdpgo/swarm/network.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>
#include <numeric>

namespace bdpgo {

NetworkMode parse_network_mode(const std::string& s) {
  if (s == "infrastructure") return NetworkMode::infrastructure;
  if (s == "adhoc") return NetworkMode::adhoc;
  throw ParameterError("unknown network mode '" + s + "'");
}

std::string to_string(NetworkMode m) { return m == NetworkMode::adhoc ? "adhoc" : "infrastructure"; }

NetworkModel::NetworkModel(int n_robots, NetworkMode mode, double radius, std::vector<Failure> failures)
    : mode_(mode), radius_(radius), positions_(static_cast<std::size_t>(n_robots), Vec3::Zero()),
      failures_(std::move(failures)) {
  if (n_robots < 1) throw ParameterError("need at least one robot");
  if (!(radius > 0.0)) throw ParameterError("radius must be positive");
  for (const auto& f : failures_)
    if (f.robot < 0 || f.robot >= n_robots) throw ParameterError("failure names an unknown robot");
}

bool NetworkModel::alive(int robot, std::size_t tick) const {
  return std::none_of(failures_.begin(), failures_.end(),
                      [&](const Failure& f) { return f.robot == robot && f.tick <= tick; });
}

bool NetworkModel::linked(int a, int b, std::size_t tick) const {
  if (a == b) return alive(a, tick);
  if (!alive(a, tick) || !alive(b, tick)) return false;
  if (mode_ == NetworkMode::infrastructure) return true;
  return (position(a) - position(b)).norm() <= radius_;
}

std::vector<SubSwarm> NetworkModel::sub_swarms(std::size_t tick) const {
  const int n = num_robots();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (linked(a, b, tick)) {
        const int ra = find(a), rb = find(b);
        parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
      }
  std::vector<SubSwarm> out;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int r = 0; r < n; ++r) {
    if (!alive(r, tick)) continue;
    const int root = find(r);
    auto& s = slot[static_cast<std::size_t>(root)];
    if (s < 0) {
      s = static_cast<int>(out.size());
      out.push_back({{}, r});
    }
    out[static_cast<std::size_t>(s)].members.push_back(r);
  }
  return out;
}

}  // namespace bdpgo
