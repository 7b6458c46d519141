#pragma once

#include "bdpgo/cli/config.hpp"
#include "bdpgo/datasets/synthetic.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bdpgo {

/// Averages over the solve events of one method. Means of lambda_imb skip
/// events with an empty part; those are counted in empty_part_events.
struct MethodSummary {
  Method method = Method::proposed;
  std::size_t solves = 0;
  std::size_t keyframes = 0;
  std::size_t repartitions = 0;
  std::size_t topology_changes = 0;
  std::size_t empty_part_events = 0;
  std::size_t orphans_total = 0;
  std::size_t unreachable_components = 0;
  double lambda_imb = 0.0;
  double lambda_cut = 0.0;
  double lambda_vol = 0.0;
  double comm_volume = 0.0;  ///< mean raw comm(P) per solve event
  std::uint64_t comm_volume_total = 0;  ///< sum of raw comm(P) over solve events
  double additional_edges = 0.0;
  double iterations_max = 0.0;
  double time_sim = 0.0;
  double utilization = 0.0;
  double iter_imbalance = 0.0;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  std::uint64_t solver_comm_total = 0;  ///< sum of SolveReport.comm_volume_total
  std::size_t diverged = 0;
  double max_decomposition_error = 0.0;  ///< relative, over all solve events
  double overhead_ms_per_keyframe = 0.0;  ///< host dependent
};

struct ScenarioResult {
  std::string dataset;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  ScenarioConfig config;
  std::vector<MethodSummary> methods;

  const MethodSummary* find(Method m) const;
};

/// Column order of metrics.csv (one row per solve event).
inline constexpr const char* kMetricsCsvHeader =
    "tick,main,members,vertices,orphans,step,lambda_imb,lambda_cut,lambda_vol,comm_volume,additional_edges,"
    "solver,k,iterations_max,time_sim,utilization,iter_imbalance,initial_cost,final_cost,comm_total";

/// Dataset -> paths -> stream -> simulation for each configured method.
/// With `out`, writes paths.csv, <method>/{metrics.csv,events.jsonl,report.json}
/// and report.json. Throws InvariantError on a coherence or connectivity
/// violation.
ScenarioResult run_scenario(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out);

/// Same with an already loaded dataset.
ScenarioResult run_scenario(const ScenarioConfig& config, const Dataset& dataset,
                            const std::optional<std::filesystem::path>& out);

nlohmann::json to_json(const MethodSummary& s);
MethodSummary summary_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioResult& r);

}  // namespace bdpgo
