#pragma once

#include "bdpgo/cli/scenario.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bdpgo {

struct RunRow {
  std::string dataset;
  std::string solver;
  std::uint64_t seed = 0;
  int n_robots = 0;
  MethodSummary summary;
};

struct ComparisonRow {
  Method method;
  std::optional<MethodSummary> summary;  ///< empty when the run is absent
  double speedup = 1.0;         ///< baseline time_sim / time_sim
  double comm_reduction = 1.0;  ///< baseline comm total / comm total
};

struct Comparison {
  std::string dataset;
  std::string solver;
  std::vector<ComparisonRow> rows;  ///< baseline, nofennel, proposed
};

/// Throws ConfigError when rows disagree on dataset,
/// solver, seed or robot count.
Comparison compare(const std::vector<RunRow>& rows);

/// Reads <dir>/<method>/report.json for every method present.
std::vector<RunRow> load_runs(const std::filesystem::path& dir);

std::string format_table(const Comparison& c);
std::string format_csv(const Comparison& c);

}  // namespace bdpgo
