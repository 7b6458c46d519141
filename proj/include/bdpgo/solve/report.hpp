#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bdpgo {

struct SolveReport {
  std::string solver;
  int k = 0;
  std::vector<int> iterations;     ///< per robot
  std::vector<double> wall_times;  ///< per robot, simulated seconds
  double time_sim = 0.0;           ///< simulated duration of the whole solve
  double initial_cost = 0.0;
  double final_cost = 0.0;
  std::uint64_t comm_volume_total = 0;
  double utilization = 1.0;     ///< sum_i t_i / (n * max_i t_i)
  double iter_imbalance = 1.0;  ///< min / max iterations over non-empty robots
  bool diverged = false;

  int iterations_max() const;
};

double utilization_rate(std::span<const double> wall_times);
/// Robots with zero iterations (empty blocks) are ignored.
double iteration_imbalance(std::span<const int> iterations);

inline constexpr const char* kSolveCsvHeader =
    "solver,k,iterations_max,time_sim,utilization,iter_imbalance,initial_cost,final_cost,comm_total";
std::string to_csv_row(const SolveReport& r);

}  // namespace bdpgo
