#include "bdpgo/partition/repartition.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace bdpgo {
namespace {

struct Neighbor {
  int pos;
  int multiplicity;
};

// Working state over canonical positions (vertices sorted by id).
class Refiner {
 public:
  Refiner(const PoseGraph& graph, const Partitioning& current, int k, const RepartitionOptions& opt)
      : k_(k), mw_(opt.migration_weight) {
    const auto order = graph.canonical_order();
    const std::size_t n = order.size();
    std::vector<int> pos_of(n);
    for (std::size_t c = 0; c < n; ++c) pos_of[order[c]] = static_cast<int>(c);

    ids_.resize(n);
    adj_.resize(n);
    orig_.assign(n, -1);
    for (std::size_t c = 0; c < n; ++c) {
      const auto idx = order[c];
      ids_[c] = graph.id_at(idx);
      auto& row = adj_[c];
      for (const auto& inc : graph.incident(idx)) row.push_back({pos_of[inc.neighbor], 1});
      std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.pos < b.pos; });
      std::size_t w = 0;
      for (std::size_t r = 0; r < row.size(); ++r) {
        if (w > 0 && row[w - 1].pos == row[r].pos) {
          ++row[w - 1].multiplicity;
        } else {
          row[w++] = row[r];
        }
      }
      row.resize(w);
      if (auto p = current.part_of(ids_[c]); p && *p >= 0 && *p < k) orig_[c] = *p;
    }
    label_ = orig_;
    sizes_.assign(static_cast<std::size_t>(k), 0);
    for (int l : label_) {
      if (l >= 0) ++sizes_[static_cast<std::size_t>(l)];
    }
    conn_.assign(static_cast<std::size_t>(k), 0);
  }

  void seed_unplaced() {
    const int n = static_cast<int>(ids_.size());
    std::vector<char> queued(ids_.size(), 0);
    std::deque<int> queue;
    auto enqueue_neighbors = [&](int c) {
      for (const auto& nb : adj_[c]) {
        if (label_[nb.pos] < 0 && !queued[nb.pos]) {
          queued[nb.pos] = 1;
          queue.push_back(nb.pos);
        }
      }
    };
    for (int c = 0; c < n; ++c) {
      if (label_[c] >= 0 || queued[c]) continue;
      for (const auto& nb : adj_[c]) {
        if (label_[nb.pos] >= 0) {
          queued[c] = 1;
          queue.push_back(c);
          break;
        }
      }
    }
    int scan = 0;
    while (true) {
      while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        load_connectivity(c);
        int best = 0;
        for (int q = 1; q < k_; ++q) {
          if (conn_[q] > conn_[best] || (conn_[q] == conn_[best] && sizes_[q] < sizes_[best])) best = q;
        }
        clear_connectivity(c);
        place(c, best);
        enqueue_neighbors(c);
      }
      while (scan < n && label_[scan] >= 0) ++scan;
      if (scan == n) break;
      const int smallest = static_cast<int>(std::min_element(sizes_.begin(), sizes_.end()) - sizes_.begin());
      queued[scan] = 1;
      place(scan, smallest);
      enqueue_neighbors(scan);
    }
  }

  // Gives every empty part one vertex, taken from the largest part.
  void fill_empty() {
    const int n = static_cast<int>(ids_.size());
    for (int q = 0; q < k_; ++q) {
      if (sizes_[q] > 0) continue;
      const int p = static_cast<int>(std::max_element(sizes_.begin(), sizes_.end()) - sizes_.begin());
      int best_c = -1;
      double best_gain = 0.0;
      for (int c = 0; c < n; ++c) {
        if (label_[c] != p) continue;
        load_connectivity(c);
        const double gain = move_gain(c, p, q);
        clear_connectivity(c);
        if (best_c < 0 || gain > best_gain) {
          best_c = c;
          best_gain = gain;
        }
      }
      move(best_c, q);
    }
  }

  void balance(const SizeBounds& bounds) {
    fill_empty();
    while (shrink_largest(bounds)) {}
    while (grow_smallest(bounds)) {}
  }

  void refine(const SizeBounds& bounds, std::uint64_t seed, int max_passes) {
    std::vector<int> order(ids_.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = static_cast<int>(c);
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
    }
    std::vector<int> candidates;
    for (int pass = 0; pass < max_passes; ++pass) {
      std::size_t moved = 0;
      for (int c : order) {
        const int p = label_[c];
        if (sizes_[p] <= std::max<std::size_t>(bounds.lower, 1)) continue;
        load_connectivity(c);
        candidates.clear();
        for (const auto& nb : adj_[c]) candidates.push_back(label_[nb.pos]);
        if (orig_[c] >= 0) candidates.push_back(orig_[c]);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        int best_q = -1;
        double best_gain = kMinGain;
        for (int q : candidates) {
          if (q == p || sizes_[q] + 1 > bounds.upper) continue;
          const double gain = move_gain(c, p, q);
          if (gain > best_gain) {
            best_gain = gain;
            best_q = q;
          }
        }
        clear_connectivity(c);
        if (best_q >= 0) {
          move(c, best_q);
          ++moved;
        }
      }
      if (moved == 0) break;
    }
  }

  // Replaces the labels by a from-scratch recursive bisection, renamed so
  // that each new part takes the current label it overlaps most.
  void assign_scratch() {
    std::vector<int> all(ids_.size());
    for (std::size_t c = 0; c < all.size(); ++c) all[c] = static_cast<int>(c);
    std::vector<int> fresh(ids_.size(), -1);
    bisect(all, 0, k_, fresh);

    std::vector<std::vector<int>> overlap(static_cast<std::size_t>(k_), std::vector<int>(static_cast<std::size_t>(k_), 0));
    for (std::size_t c = 0; c < ids_.size(); ++c)
      if (orig_[c] >= 0) ++overlap[fresh[c]][orig_[c]];
    std::vector<std::tuple<int, int, int>> pairs;  // (-overlap, fresh, orig)
    for (int a = 0; a < k_; ++a)
      for (int b = 0; b < k_; ++b)
        if (overlap[a][b] > 0) pairs.emplace_back(-overlap[a][b], a, b);
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> rename(static_cast<std::size_t>(k_), -1);
    std::vector<char> taken(static_cast<std::size_t>(k_), 0);
    for (const auto& [neg, a, b] : pairs) {
      if (rename[a] >= 0 || taken[b]) continue;
      rename[a] = b;
      taken[b] = 1;
    }
    int next = 0;
    for (int a = 0; a < k_; ++a) {
      if (rename[a] >= 0) continue;
      while (taken[next]) ++next;
      rename[a] = next;
      taken[next] = 1;
    }
    std::fill(sizes_.begin(), sizes_.end(), 0);
    for (std::size_t c = 0; c < ids_.size(); ++c) {
      label_[c] = rename[fresh[c]];
      ++sizes_[label_[c]];
    }
  }

  /// Cut edges plus migration_weight per vertex away from its original part.
  double objective() const {
    std::size_t cut = 0;
    std::size_t away_count = 0;
    for (std::size_t c = 0; c < ids_.size(); ++c) {
      for (const auto& nb : adj_[c])
        if (static_cast<std::size_t>(nb.pos) > c && label_[nb.pos] != label_[c]) cut += static_cast<std::size_t>(nb.multiplicity);
      away_count += static_cast<std::size_t>(away(static_cast<int>(c), label_[c]));
    }
    if (away_count == 0) return static_cast<double>(cut);
    return static_cast<double>(cut) + mw_ * static_cast<double>(away_count);
  }

  Partitioning result() const {
    Partitioning out(k_);
    for (std::size_t c = 0; c < ids_.size(); ++c) out.assign(ids_[c], label_[c]);
    return out;
  }

 private:
  static constexpr double kMinGain = 1e-9;

  // Splits `set` into `parts` pieces of proportional size along a breadth
  // first order from a pseudo-peripheral vertex.
  void bisect(const std::vector<int>& set, int first_label, int parts, std::vector<int>& out) const {
    if (parts == 1) {
      for (int c : set) out[c] = first_label;
      return;
    }
    const int left_parts = parts / 2;
    const std::size_t left_size = set.size() * static_cast<std::size_t>(left_parts) / static_cast<std::size_t>(parts);
    const auto order = bfs_order(set);
    std::vector<int> left(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(left_size));
    std::vector<int> right(order.begin() + static_cast<std::ptrdiff_t>(left_size), order.end());
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    bisect(left, first_label, left_parts, out);
    bisect(right, first_label + left_parts, parts - left_parts, out);
  }

  // `set` is sorted. Restarts from the smallest unvisited member when the
  // induced subgraph is disconnected.
  std::vector<int> bfs_order(const std::vector<int>& set) const {
    std::vector<int> order;
    if (set.empty()) return order;
    auto member = [&](int c) { return std::binary_search(set.begin(), set.end(), c); };
    auto run = [&](int start, std::vector<char>& seen, std::vector<int>& out) {
      std::size_t head = out.size();
      out.push_back(start);
      seen[static_cast<std::size_t>(std::lower_bound(set.begin(), set.end(), start) - set.begin())] = 1;
      while (head < out.size()) {
        const int c = out[head++];
        for (const auto& nb : adj_[c]) {
          if (!member(nb.pos)) continue;
          auto& s = seen[static_cast<std::size_t>(std::lower_bound(set.begin(), set.end(), nb.pos) - set.begin())];
          if (s) continue;
          s = 1;
          out.push_back(nb.pos);
        }
      }
    };
    // Two sweeps find a pseudo-peripheral start.
    int start = set.front();
    for (int sweep = 0; sweep < 2; ++sweep) {
      std::vector<char> seen(set.size(), 0);
      std::vector<int> tmp;
      run(start, seen, tmp);
      start = tmp.back();
    }
    std::vector<char> seen(set.size(), 0);
    run(start, seen, order);
    for (std::size_t i = 0; i < set.size(); ++i)
      if (!seen[i]) run(set[i], seen, order);
    return order;
  }

  // Moves the best vertex out of the largest part when it exceeds the upper
  // bound. Candidate key: adjacent target first, then gain, then smaller
  // target, then smaller vertex id, then smaller target index.
  bool shrink_largest(const SizeBounds& bounds) {
    const int n = static_cast<int>(ids_.size());
    const int p = static_cast<int>(std::max_element(sizes_.begin(), sizes_.end()) - sizes_.begin());
    if (sizes_[p] <= bounds.upper) return false;
    int best_c = -1, best_q = -1;
    bool best_adj = false;
    double best_gain = 0.0;
    for (int c = 0; c < n; ++c) {
      if (label_[c] != p) continue;
      load_connectivity(c);
      for (int q = 0; q < k_; ++q) {
        if (q == p || sizes_[q] >= bounds.upper) continue;
        const bool adjacent = conn_[q] > 0;
        const double gain = move_gain(c, p, q);
        bool better = best_c < 0;
        if (!better && adjacent != best_adj) better = adjacent;
        else if (!better && gain != best_gain) better = gain > best_gain;
        else if (!better && sizes_[q] != sizes_[best_q]) better = sizes_[q] < sizes_[best_q];
        if (better) {
          best_c = c;
          best_q = q;
          best_adj = adjacent;
          best_gain = gain;
        }
      }
      clear_connectivity(c);
    }
    move(best_c, best_q);
    return true;
  }

  // Pulls the best vertex into the smallest part when it is under the lower
  // bound, from a part that stays at or above it. Same candidate key as
  // shrink_largest, with "adjacent" meaning adjacent to the smallest part.
  bool grow_smallest(const SizeBounds& bounds) {
    const int n = static_cast<int>(ids_.size());
    const int q = static_cast<int>(std::min_element(sizes_.begin(), sizes_.end()) - sizes_.begin());
    if (sizes_[q] >= bounds.lower) return false;
    int best_c = -1;
    bool best_adj = false;
    double best_gain = 0.0;
    for (int c = 0; c < n; ++c) {
      const int p = label_[c];
      if (p == q || sizes_[p] <= bounds.lower) continue;
      load_connectivity(c);
      const bool adjacent = conn_[q] > 0;
      const double gain = move_gain(c, p, q);
      clear_connectivity(c);
      bool better = best_c < 0;
      if (!better && adjacent != best_adj) better = adjacent;
      else if (!better && gain != best_gain) better = gain > best_gain;
      else if (!better && sizes_[p] != sizes_[label_[best_c]]) better = sizes_[p] > sizes_[label_[best_c]];
      if (better) {
        best_c = c;
        best_adj = adjacent;
        best_gain = gain;
      }
    }
    if (best_c < 0) return false;
    move(best_c, q);
    return true;
  }

  void load_connectivity(int c) {
    for (const auto& nb : adj_[c]) {
      if (label_[nb.pos] >= 0) conn_[label_[nb.pos]] += nb.multiplicity;
    }
  }
  void clear_connectivity(int c) {
    for (const auto& nb : adj_[c]) {
      if (label_[nb.pos] >= 0) conn_[label_[nb.pos]] = 0;
    }
  }

  int away(int c, int part) const { return orig_[c] >= 0 && part != orig_[c] ? 1 : 0; }

  // Requires load_connectivity(c).
  double move_gain(int c, int from, int to) const {
    const int delta = away(c, to) - away(c, from);
    const double penalty = delta == 0 ? 0.0 : mw_ * delta;
    return static_cast<double>(conn_[to] - conn_[from]) - penalty;
  }

  void place(int c, int part) {
    label_[c] = part;
    ++sizes_[part];
  }
  void move(int c, int part) {
    --sizes_[label_[c]];
    label_[c] = part;
    ++sizes_[part];
  }

  int k_;
  double mw_;
  std::vector<KeyframeId> ids_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<int> orig_;
  std::vector<int> label_;
  std::vector<std::size_t> sizes_;
  std::vector<int> conn_;
};

}  // namespace

std::size_t balance_bound(std::size_t num_vertices, int k, double balance_tol) {
  const std::size_t ideal = (num_vertices + static_cast<std::size_t>(k) - 1) / static_cast<std::size_t>(k);
  const auto scaled = static_cast<std::size_t>(std::floor(balance_tol * static_cast<double>(ideal) + 1e-9));
  return std::max(ideal, scaled);
}

SizeBounds balance_bounds(std::size_t num_vertices, int k, double balance_tol) {
  const std::size_t floor_ideal = num_vertices / static_cast<std::size_t>(k);
  const auto scaled = static_cast<std::size_t>(std::floor(static_cast<double>(floor_ideal) / balance_tol + 1e-9));
  return {std::max<std::size_t>(std::min(scaled, floor_ideal), 1), balance_bound(num_vertices, k, balance_tol)};
}

Partitioning repartition(const PoseGraph& graph, const Partitioning& current, int k,
                         const RepartitionOptions& options) {
  if (k < 1) throw ParameterError("repartition needs k >= 1");
  if (!(options.balance_tol >= 1.0)) throw ParameterError("balance tolerance must be >= 1");
  if (!(options.migration_weight >= 0.0)) throw ParameterError("migration weight must be >= 0");
  if (static_cast<std::size_t>(k) > graph.num_vertices()) {
    throw InfeasibleError("cannot split " + std::to_string(graph.num_vertices()) + " vertices into " +
                          std::to_string(k) + " non-empty parts");
  }
  const SizeBounds bounds = balance_bounds(graph.num_vertices(), k, options.balance_tol);
  const Refiner base(graph, current, k, options);

  Refiner diffusion = base;
  diffusion.seed_unplaced();
  diffusion.balance(bounds);
  diffusion.refine(bounds, options.seed, options.max_passes);

  Refiner scratch = base;
  scratch.assign_scratch();
  scratch.balance(bounds);
  scratch.refine(bounds, options.seed, options.max_passes);

  return scratch.objective() < diffusion.objective() ? scratch.result() : diffusion.result();
}

Partitioning repartition(const PoseGraph& graph, const Partitioning& current, int k,
                         double balance_tol, double migration_weight, std::uint64_t seed) {
  RepartitionOptions opt;
  opt.balance_tol = balance_tol;
  opt.migration_weight = migration_weight;
  opt.seed = seed;
  return repartition(graph, current, k, opt);
}

}  // namespace bdpgo
