// Scenario runner: `bdpgo run --config <file> --out <dir>` and `bdpgo compare --in <dir>`.

#include "bdpgo/cli/compare.hpp"
#include "bdpgo/cli/scenario.hpp"
#include "bdpgo/core/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int run(const std::string& config_path, const std::string& out, std::optional<std::uint64_t> seed,
        const std::string& method, const std::string& solver) {
  bdpgo::ScenarioConfig cfg = bdpgo::load_config(config_path);
  if (seed) cfg.seed = *seed;
  if (!method.empty()) cfg.methods = {bdpgo::parse_method(method)};
  if (!solver.empty()) cfg.solver = bdpgo::parse_solver(solver);
  const auto result = bdpgo::run_scenario(cfg, std::filesystem::path(out));
  for (const auto& m : result.methods)
    std::cout << bdpgo::to_string(m.method) << ": " << m.solves << " solves, lambda_imb " << m.lambda_imb
              << ", comm total " << m.comm_volume_total << ", repartitions " << m.repartitions << ", overhead "
              << m.overhead_ms_per_keyframe << " ms/keyframe\n";
  return 0;
}

int compare(const std::string& dir) {
  const auto rows = bdpgo::load_runs(dir);
  const auto cmp = bdpgo::compare(rows);
  std::cout << bdpgo::format_table(cmp);
  std::ofstream(std::filesystem::path(dir) / "compare.csv") << bdpgo::format_csv(cmp);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced distributed pose graph optimization simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", method, solver, in_dir;
  std::optional<std::uint64_t> seed;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario config");
  run_cmd->add_option("--config", config_path, "Scenario file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--seed", seed, "Override the config seed");
  run_cmd->add_option("--method", method, "Only this method")->check(CLI::IsMember({"baseline", "nofennel", "proposed"}));
  run_cmd->add_option("--solver", solver, "Override the solver")->check(CLI::IsMember({"dgs", "asapp"}));

  auto* cmp_cmd = app.add_subcommand("compare", "Compare the methods of one output directory");
  cmp_cmd->add_option("--in", in_dir, "Output directory of a run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return run(config_path, out_dir, seed, method, solver);
    return compare(in_dir);
  } catch (const bdpgo::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return 3;
  } catch (const bdpgo::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bdpgo::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
