#include "bdpgo/trajgen/paths.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <random>

namespace bdpgo {

PathBalance parse_path_balance(const std::string& s) {
  if (s == "even") return PathBalance::even;
  if (s == "uneven") return PathBalance::uneven;
  throw ParameterError("unknown path balance '" + s + "'");
}

std::string to_string(PathBalance b) { return b == PathBalance::even ? "even" : "uneven"; }

std::vector<std::size_t> path_lengths(std::size_t num_vertices, int n_robots, PathBalance balance,
                                      std::uint64_t seed) {
  if (n_robots < 1 || static_cast<std::size_t>(n_robots) > num_vertices)
    throw InfeasibleError("need 1 <= n_robots <= |V|");
  const auto n = static_cast<std::size_t>(n_robots);
  std::vector<std::size_t> len(n);
  if (balance == PathBalance::even) {
    for (std::size_t r = 0; r < n; ++r) len[r] = num_vertices / n + (r < num_vertices % n ? 1 : 0);
    return len;
  }
  // One vertex each, the rest split at n - 1 uniform breakpoints.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t rest = num_vertices - n;
  std::uniform_int_distribution<std::size_t> pick(0, rest);
  std::vector<std::size_t> cuts{0, rest};
  for (std::size_t r = 1; r < n; ++r) cuts.push_back(pick(rng));
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t r = 0; r < n; ++r) len[r] = 1 + cuts[r + 1] - cuts[r];
  return len;
}

namespace {

using Index = PoseGraph::Index;
constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

void relax_from(const PoseGraph& g, Index s, std::vector<std::size_t>& dist) {
  std::deque<Index> q{s};
  dist[s] = 0;
  while (!q.empty()) {
    const Index u = q.front();
    q.pop_front();
    for (const auto& inc : g.incident(u)) {
      if (dist[inc.neighbor] <= dist[u] + 1) continue;
      dist[inc.neighbor] = dist[u] + 1;
      q.push_back(inc.neighbor);
    }
  }
}

// Nearest unvisited vertex reachable from `tail` by walking through the
// robot's own vertices. Ties go to the smallest id.
std::optional<Index> nearest_unvisited(const PoseGraph& g, Index tail, int robot,
                                       const std::vector<int>& owner, std::vector<std::size_t>& mark,
                                       std::size_t stamp) {
  std::vector<Index> layer{tail};
  mark[tail] = stamp;
  while (!layer.empty()) {
    std::optional<Index> best;
    std::vector<Index> next;
    for (Index u : layer) {
      for (const auto& inc : g.incident(u)) {
        const Index w = inc.neighbor;
        if (owner[w] < 0) {
          if (!best || g.id_at(w) < g.id_at(*best)) best = w;
        } else if (owner[w] == robot && mark[w] != stamp) {
          mark[w] = stamp;
          next.push_back(w);
        }
      }
    }
    if (best) return best;
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

std::vector<RobotPath> generate_paths(const PoseGraph& graph, int n_robots, std::uint64_t seed,
                                      PathBalance balance) {
  const std::size_t nv = graph.num_vertices();
  const auto lengths = path_lengths(nv, n_robots, balance, seed);
  const auto n = static_cast<std::size_t>(n_robots);
  const auto order = graph.canonical_order();

  std::mt19937_64 rng(seed);
  std::vector<Index> seeds;
  std::vector<std::size_t> dist(nv, kUnreached);
  seeds.push_back(order[std::uniform_int_distribution<std::size_t>(0, nv - 1)(rng)]);
  relax_from(graph, seeds[0], dist);
  while (seeds.size() < n) {
    Index best = order[0];
    bool have = false;
    for (Index i : order) {
      if (dist[i] == 0) continue;
      if (!have || dist[i] > dist[best]) {
        best = i;
        have = true;
      }
    }
    seeds.push_back(best);
    relax_from(graph, best, dist);
  }

  std::vector<int> owner(nv, -1);
  std::vector<RobotPath> paths(n);
  for (std::size_t r = 0; r < n; ++r) {
    paths[r].robot = static_cast<int>(r);
    paths[r].keyframes.push_back(graph.id_at(seeds[r]));
    owner[seeds[r]] = static_cast<int>(r);
  }

  std::vector<std::size_t> mark(nv, 0);
  std::size_t stamp = 0;
  std::size_t smallest = 0;  // cursor into order for teleports
  std::size_t placed = n;
  while (placed < nv) {
    for (std::size_t r = 0; r < n && placed < nv; ++r) {
      if (paths[r].keyframes.size() >= lengths[r]) continue;
      const Index tail = graph.index_of(paths[r].keyframes.back());
      auto next = nearest_unvisited(graph, tail, static_cast<int>(r), owner, mark, ++stamp);
      if (!next) {
        while (owner[order[smallest]] >= 0) ++smallest;
        next = order[smallest];
      }
      owner[*next] = static_cast<int>(r);
      paths[r].keyframes.push_back(graph.id_at(*next));
      ++placed;
    }
  }
  return paths;
}

}  // namespace bdpgo
