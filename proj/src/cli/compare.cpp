#include "bdpgo/cli/compare.hpp"

#include "bdpgo/core/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bdpgo {

Comparison compare(const std::vector<RunRow>& rows) {
  Comparison c;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows.front();
    const auto& b = rows[i];
    if (a.dataset != b.dataset || a.solver != b.solver || a.seed != b.seed || a.n_robots != b.n_robots)
      throw ConfigError("runs differ in dataset, solver, seed or robot count");
  }
  if (!rows.empty()) {
    c.dataset = rows.front().dataset;
    c.solver = rows.front().solver;
  }
  const MethodSummary* base = nullptr;
  for (const auto& r : rows)
    if (r.summary.method == Method::baseline) base = &r.summary;

  for (Method m : {Method::baseline, Method::nofennel, Method::proposed}) {
    ComparisonRow row{m, std::nullopt};
    for (const auto& r : rows)
      if (r.summary.method == m) row.summary = r.summary;
    if (row.summary && base) {
      if (row.summary->time_sim > 0) row.speedup = base->time_sim / row.summary->time_sim;
      if (row.summary->comm_volume_total > 0)
        row.comm_reduction = static_cast<double>(base->comm_volume_total) / static_cast<double>(row.summary->comm_volume_total);
    }
    c.rows.push_back(row);
  }
  return c;
}

std::vector<RunRow> load_runs(const std::filesystem::path& dir) {
  std::vector<RunRow> rows;
  for (Method m : {Method::baseline, Method::nofennel, Method::proposed}) {
    const auto path = dir / to_string(m) / "report.json";
    if (!std::filesystem::exists(path)) continue;
    std::ifstream in(path);
    nlohmann::json j;
    try {
      in >> j;
      rows.push_back({j.at("dataset"), j.at("solver"), j.at("seed"), j.at("n_robots"), summary_from_json(j)});
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
  return rows;
}

std::string format_table(const Comparison& c) {
  std::ostringstream os;
  os << "dataset " << c.dataset << ", solver " << c.solver << '\n';
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-9s %8s %8s %8s %12s %8s %10s %8s %12s %8s %8s\n", "method", "imb", "cut", "vol",
                "comm_total", "add_e", "time_sim", "util", "final_cost", "speedup", "comm_x");
  os << buf;
  for (const auto& r : c.rows) {
    if (!r.summary) {
      std::snprintf(buf, sizeof buf, "%-9s %s\n", to_string(r.method).c_str(), "(absent)");
    } else {
      const auto& s = *r.summary;
      std::snprintf(buf, sizeof buf, "%-9s %8.3f %8.3f %8.3f %12llu %8.2f %10.4g %8.3f %12.6g %8.3f %8.3f\n",
                    to_string(r.method).c_str(), s.lambda_imb, s.lambda_cut, s.lambda_vol,
                    static_cast<unsigned long long>(s.comm_volume_total), s.additional_edges, s.time_sim,
                    s.utilization, s.final_cost, r.speedup, r.comm_reduction);
    }
    os << buf;
  }
  return os.str();
}

std::string format_csv(const Comparison& c) {
  std::ostringstream os;
  os << "dataset,solver,method,lambda_imb,lambda_cut,lambda_vol,comm_volume_total,additional_edges,time_sim,"
        "utilization,iter_imbalance,final_cost,speedup,comm_reduction\n";
  for (const auto& r : c.rows) {
    os << c.dataset << ',' << c.solver << ',' << to_string(r.method);
    if (!r.summary) {
      os << ",absent,,,,,,,,,,\n";
      continue;
    }
    const auto& s = *r.summary;
    char buf[320];
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f,%llu,%.4f,%.9g,%.6f,%.6f,%.9g,%.6f,%.6f\n", s.lambda_imb,
                  s.lambda_cut, s.lambda_vol, static_cast<unsigned long long>(s.comm_volume_total),
                  s.additional_edges, s.time_sim, s.utilization, s.iter_imbalance, s.final_cost, r.speedup,
                  r.comm_reduction);
    os << buf;
  }
  return os.str();
}

}  // namespace bdpgo
