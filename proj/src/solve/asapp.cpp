#include "bdpgo/solve/asapp.hpp"

#include "bdpgo/core/cost.hpp"
#include "bdpgo/core/errors.hpp"
#include "bdpgo/core/so3.hpp"
#include "bdpgo/partition/metrics.hpp"
#include "bdpgo/solve/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <tuple>

namespace bdpgo {

AsappResult asapp_solve(const PoseGraph& graph, const Partitioning& parts, std::span<const Pose> initial,
                        const AsappOptions& options) {
  if (!(options.step > 0.0)) throw ParameterError("ASAPP step size must be positive");
  if (!(options.budget_seconds > 0.0)) throw ParameterError("ASAPP budget must be positive");
  if (initial.size() != graph.num_vertices())
    throw ParameterError("initial estimate does not match the graph");
  const int k = parts.k();
  const auto labels = parts.labels(graph);

  std::vector<std::vector<PoseGraph::Index>> vars(static_cast<std::size_t>(k));
  for (PoseGraph::Index i : graph.canonical_order()) vars[static_cast<std::size_t>(labels[i])].push_back(i);

  AsappResult out;
  out.estimate.assign(initial.begin(), initial.end());
  SolveReport& r = out.report;
  r.solver = "asapp";
  r.k = k;

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> jitter(0.0, 0.01);
  std::vector<double> period(static_cast<std::size_t>(k), 0.0);
  using Event = std::tuple<double, int, int>;  // finish time, robot, iteration
  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  for (int p = 0; p < k; ++p) {
    const auto up = static_cast<std::size_t>(p);
    const double rate = up < options.vertex_rate.size() ? options.vertex_rate[up] : options.default_rate;
    if (!(rate > 0.0)) throw ParameterError("ASAPP vertex rate must be positive");
    const double j = jitter(rng);
    const std::size_t n = vars[up].size();
    if (n == 0) {
      r.iterations.push_back(0);
      r.wall_times.push_back(0.0);
      continue;
    }
    const int iters = std::max(1, static_cast<int>(std::floor(rate * options.budget_seconds / n)));
    period[up] = static_cast<double>(n) / rate * (1.0 + j);
    r.iterations.push_back(iters);
    r.wall_times.push_back(iters * static_cast<double>(n) / rate);
    events.emplace(period[up], p, 1);
  }

  std::vector<TangentVector> grad;
  while (!events.empty()) {
    const auto [t, p, m] = events.top();
    events.pop();
    const auto up = static_cast<std::size_t>(p);
    const auto& local = vars[up];
    grad.resize(local.size());
    riemannian_gradient(graph, local, out.estimate, grad, options.exec);
    for (std::size_t a = 0; a < local.size(); ++a) {
      Pose& x = out.estimate[local[a]];
      x.translation -= options.step * grad[a].translation;
      x.rotation = x.rotation * exp_so3(-options.step * grad[a].rotation);
    }
    if (options.record_cost_trace) out.cost_trace.push_back(evaluate_cost(graph, out.estimate, options.exec));
    if (m < r.iterations[up]) events.emplace(t + period[up], p, m + 1);
  }

  const auto comm = comm_volume_per_part(graph, labels, k, options.sigma_p, options.exec);
  for (std::size_t p = 0; p < comm.size(); ++p)
    r.comm_volume_total += static_cast<std::uint64_t>(r.iterations[p]) * comm[p];
  r.time_sim = *std::max_element(r.wall_times.begin(), r.wall_times.end());
  r.utilization = utilization_rate(r.wall_times);
  r.iter_imbalance = iteration_imbalance(r.iterations);
  r.initial_cost = evaluate_cost(graph, initial, options.exec);
  r.final_cost = evaluate_cost(graph, out.estimate, options.exec);
  r.diverged = !std::isfinite(r.final_cost) || r.final_cost > 1.1 * r.initial_cost;
  return out;
}

}  // namespace bdpgo
