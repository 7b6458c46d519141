// Serial reference against the OpenMP path for the data-parallel kernels.
// The second argument selects the policy: 0 serial, 1 parallel.

#include "bdpgo/datasets/synthetic.hpp"
#include "bdpgo/kernels/kernels.hpp"
#include "bdpgo/partition/partitioning.hpp"
#include "bdpgo/solve/dgs.hpp"
#include "bdpgo/solve/gradient.hpp"

#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

using namespace bdpgo;

namespace {

const Dataset& dataset(std::size_t vertices) {
  static std::vector<std::pair<std::size_t, Dataset>> cache;
  for (const auto& [n, d] : cache)
    if (n == vertices) return d;
  cache.emplace_back(vertices, make_synthetic("grid", vertices, 1));
  return cache.back().second;
}

// Ten contiguous index ranges.
std::vector<int> labels_for(const PoseGraph& g) {
  std::vector<int> labels(g.num_vertices());
  for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = static_cast<int>(10 * v / labels.size());
  return labels;
}

Exec policy(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_EdgeCosts(benchmark::State& state) {
  const PoseGraph& g = dataset(static_cast<std::size_t>(state.range(0))).graph;
  std::vector<double> out(g.num_edges());
  for (auto _ : state) {
    kernels::edge_costs(g, g.poses(), out, policy(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_ForeignPartitionCounts(benchmark::State& state) {
  const PoseGraph& g = dataset(static_cast<std::size_t>(state.range(0))).graph;
  const auto labels = labels_for(g);
  std::vector<int> out(g.num_vertices());
  for (auto _ : state) {
    kernels::foreign_partition_counts(g, labels, out, policy(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_vertices()));
}

void BM_CountCutEdges(benchmark::State& state) {
  const PoseGraph& g = dataset(static_cast<std::size_t>(state.range(0))).graph;
  const auto labels = labels_for(g);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::count_cut_edges(g, labels, policy(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_RiemannianGradient(benchmark::State& state) {
  const PoseGraph& g = dataset(static_cast<std::size_t>(state.range(0))).graph;
  std::vector<PoseGraph::Index> vars(g.num_vertices());
  std::iota(vars.begin(), vars.end(), PoseGraph::Index{0});
  std::vector<TangentVector> out(vars.size());
  for (auto _ : state) {
    riemannian_gradient(g, vars, g.poses(), out, policy(state));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(vars.size()));
}

// Both DGS phases with ten blocks; the per-block factorizations and the
// blocks of one colour run concurrently under the parallel policy.
void BM_DgsSolve(benchmark::State& state) {
  const PoseGraph& g = dataset(static_cast<std::size_t>(state.range(0))).graph;
  const Partitioning parts = Partitioning::from_labels(g, labels_for(g), 10);
  DgsOptions opt;
  opt.exec = policy(state);
  opt.max_iters_per_phase = 20;
  for (auto _ : state) benchmark::DoNotOptimize(dgs_solve(g, parts, opt).report.final_cost);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (std::int64_t n : {3000, 8000})
    for (std::int64_t p : {0, 1}) b->Args({n, p});
  b->ArgNames({"vertices", "parallel"});
}

}  // namespace

BENCHMARK(BM_EdgeCosts)->Apply(sizes);
BENCHMARK(BM_ForeignPartitionCounts)->Apply(sizes);
BENCHMARK(BM_CountCutEdges)->Apply(sizes);
BENCHMARK(BM_RiemannianGradient)->Apply(sizes);
BENCHMARK(BM_DgsSolve)->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
