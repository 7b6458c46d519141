#include "bdpgo/core/graph_algo.hpp"

#include "bdpgo/core/errors.hpp"
#include "bdpgo/core/so3.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace bdpgo {
namespace {

using Index = PoseGraph::Index;
constexpr Index kNone = std::numeric_limits<Index>::max();

// Distinct neighbours of i, ascending by id.
void sorted_neighbors(const PoseGraph& g, Index i, std::vector<Index>& out) {
  out.clear();
  for (const auto& inc : g.incident(i)) out.push_back(inc.neighbor);
  std::sort(out.begin(), out.end(), [&](Index a, Index b) { return g.id_at(a) < g.id_at(b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

std::vector<std::vector<KeyframeId>> connected_components(const PoseGraph& graph,
                                                          std::span<const KeyframeId> subset) {
  std::vector<char> in_subset(graph.num_vertices(), 0);
  std::vector<Index> members;
  for (auto id : subset) {
    if (auto i = graph.find(id); i && !in_subset[*i]) {
      in_subset[*i] = 1;
      members.push_back(*i);
    }
  }
  std::sort(members.begin(), members.end(),
            [&](Index a, Index b) { return graph.id_at(a) < graph.id_at(b); });

  std::vector<char> seen(graph.num_vertices(), 0);
  std::vector<std::vector<KeyframeId>> out;
  std::vector<Index> stack;
  for (Index start : members) {
    if (seen[start]) continue;
    auto& comp = out.emplace_back();
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      comp.push_back(graph.id_at(v));
      for (const auto& inc : graph.incident(v)) {
        if (in_subset[inc.neighbor] && !seen[inc.neighbor]) {
          seen[inc.neighbor] = 1;
          stack.push_back(inc.neighbor);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
  }
  return out;
}

std::vector<int> component_labels(const PoseGraph& graph) {
  std::vector<int> label(graph.num_vertices(), -1);
  int next = 0;
  std::vector<Index> stack;
  for (Index start : graph.canonical_order()) {
    if (label[start] >= 0) continue;
    label[start] = next;
    stack.assign(1, start);
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      for (const auto& inc : graph.incident(v)) {
        if (label[inc.neighbor] < 0) {
          label[inc.neighbor] = next;
          stack.push_back(inc.neighbor);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<KeyframeId> shortest_path(const PoseGraph& graph, std::span<const KeyframeId> sources,
                                      std::span<const KeyframeId> targets) {
  // Unit edge weights, so Dijkstra reduces to breadth-first search.
  const std::size_t n = graph.num_vertices();
  std::vector<char> is_target(n, 0);
  for (auto id : targets) is_target[graph.index_of(id)] = 1;

  std::vector<Index> src;
  for (auto id : sources) src.push_back(graph.index_of(id));
  std::sort(src.begin(), src.end(), [&](Index a, Index b) { return graph.id_at(a) < graph.id_at(b); });
  src.erase(std::unique(src.begin(), src.end()), src.end());

  std::vector<Index> parent(n, kNone);
  std::vector<char> seen(n, 0);
  std::deque<Index> queue;
  for (Index s : src) {
    seen[s] = 1;
    queue.push_back(s);
  }
  std::vector<Index> nbrs;
  Index hit = kNone;
  for (Index s : src) {
    if (is_target[s]) hit = s;
  }
  while (hit == kNone && !queue.empty()) {
    const Index v = queue.front();
    queue.pop_front();
    sorted_neighbors(graph, v, nbrs);
    for (Index w : nbrs) {
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = v;
      if (is_target[w]) {
        hit = w;
        break;
      }
      queue.push_back(w);
    }
  }
  if (hit == kNone) throw UnreachableError("no path between the source and target sets");

  std::vector<KeyframeId> path;
  for (Index v = hit; v != kNone; v = parent[v]) path.push_back(graph.id_at(v));
  std::reverse(path.begin(), path.end());
  return path;
}

PoseGraphEdge compose_along_path(const PoseGraph& graph, std::span<const KeyframeId> path) {
  if (path.size() < 2) throw PathError("a path needs at least two vertices");
  RelativePose acc;
  double wt = std::numeric_limits<double>::infinity();
  double wr = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const Index a = graph.index_of(path[s]);
    const Index b = graph.index_of(path[s + 1]);
    std::size_t best = graph.num_edges();
    for (const auto& inc : graph.incident(a)) {
      if (inc.neighbor == b) best = std::min(best, inc.edge);
    }
    if (best == graph.num_edges()) {
      throw PathError("vertices " + std::to_string(path[s].value) + " and " +
                      std::to_string(path[s + 1].value) + " are not adjacent");
    }
    const auto& e = graph.edge(best);
    RelativePose step{e.rel_rotation, e.rel_translation};
    if (graph.endpoints(best).first != a) step = inverse(step);
    acc = compose(acc, step);
    wt = std::min(wt, e.weight_t);
    wr = std::min(wr, e.weight_R);
  }
  // Noise adds up along the chain, so the weights shrink with sqrt(hops).
  const double shrink = std::sqrt(static_cast<double>(path.size() - 1));
  return PoseGraphEdge{path.front(), path.back(), acc.rotation, acc.translation, wt / shrink, wr / shrink,
                       EdgeKind::repair};
}

}  // namespace bdpgo
