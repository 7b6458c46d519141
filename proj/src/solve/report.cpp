#include "bdpgo/solve/report.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace bdpgo {

int SolveReport::iterations_max() const {
  return iterations.empty() ? 0 : *std::max_element(iterations.begin(), iterations.end());
}

double utilization_rate(std::span<const double> wall_times) {
  if (wall_times.empty()) return 1.0;
  const double mx = *std::max_element(wall_times.begin(), wall_times.end());
  if (mx <= 0.0) return 1.0;
  const double sum = std::accumulate(wall_times.begin(), wall_times.end(), 0.0);
  return sum / (static_cast<double>(wall_times.size()) * mx);
}

double iteration_imbalance(std::span<const int> iterations) {
  int lo = 0;
  int hi = 0;
  for (int it : iterations) {
    if (it <= 0) continue;
    lo = lo == 0 ? it : std::min(lo, it);
    hi = std::max(hi, it);
  }
  return hi == 0 ? 1.0 : static_cast<double>(lo) / hi;
}

std::string to_csv_row(const SolveReport& r) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "%s,%d,%d,%.9g,%.6f,%.6f,%.9g,%.9g,%llu", r.solver.c_str(), r.k,
                r.iterations_max(), r.time_sim, r.utilization, r.iter_imbalance, r.initial_cost,
                r.final_cost, static_cast<unsigned long long>(r.comm_volume_total));
  return buf;
}

}  // namespace bdpgo
