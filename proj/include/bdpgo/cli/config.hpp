#pragma once

#include "bdpgo/swarm/network.hpp"
#include "bdpgo/swarm/state.hpp"
#include "bdpgo/trajgen/paths.hpp"
#include "bdpgo/trajgen/stream.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace bdpgo {

enum class SolverKind { dgs, asapp };

SolverKind parse_solver(const std::string& s);
std::string to_string(SolverKind s);

struct ScenarioConfig {
  std::string dataset = "synthetic:intel";
  int n_robots = 10;
  NetworkMode mode = NetworkMode::infrastructure;
  double radius = 10.0;
  std::vector<Failure> failures;
  std::size_t dn = 100;
  double gamma = 1.5;
  double nu = 1.1;
  double balance_tol = 1.05;
  double migration_weight = 0.01;
  std::vector<Method> methods{Method::baseline, Method::nofennel, Method::proposed};
  SolverKind solver = SolverKind::dgs;
  std::size_t solve_every = 10;
  int dgs_max_iters = 100;
  double dgs_stop_tol = 1e-4;
  double dgs_unit_cost = 1e-6;
  double asapp_step = 1e-5;
  double asapp_budget = 5.0;
  double asapp_rate = 2000.0;
  std::uint64_t sigma_p = 1;
  PathBalance path_balance = PathBalance::uneven;
  StreamTiming timing = StreamTiming::stretched;
  std::uint64_t seed = 0;
};

/// `key = value` lines; `#` starts a comment. Failures are written as
/// `robot@tick` items separated by commas, methods as a comma list.
/// Throws ConfigError naming the line for unknown keys or bad values.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ScenarioConfig& c);

}  // namespace bdpgo
