#include "bdpgo/cli/compare.hpp"
#include "bdpgo/cli/config.hpp"
#include "bdpgo/cli/scenario.hpp"
#include "bdpgo/core/errors.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bdpgo;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bdpgo_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(BDPGO_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ScenarioConfig small(const std::string& dataset = "synthetic:intel:300") {
  ScenarioConfig c;
  c.dataset = dataset;
  c.seed = 4;
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "dataset = synthetic:torus\n"
      "mode = adhoc\n"
      "failures = 3@100, 5@7\n"
      "methods = baseline,proposed\n"
      "solver = asapp\n"
      "seed = 12\n");
  const ScenarioConfig c = parse_config(in);
  CHECK(c.dataset == "synthetic:torus");
  CHECK(c.mode == NetworkMode::adhoc);
  REQUIRE(c.failures.size() == 2);
  CHECK(c.failures[1].robot == 5);
  CHECK(c.failures[1].tick == 7);
  CHECK(c.methods == std::vector<Method>{Method::baseline, Method::proposed});
  CHECK(c.solver == SolverKind::asapp);
  CHECK(c.seed == 12);
  CHECK(c.n_robots == 10);
  CHECK(c.dn == 100);
}

TEST_CASE("config errors name the line") {
  std::istringstream unknown("dataset = synthetic:intel\nfrobnicate = 1\n");
  try {
    parse_config(unknown);
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream bad_value("gamma = fast\n");
  CHECK_THROWS_AS(parse_config(bad_value), ConfigError);
  std::istringstream bad_method("methods = everything\n");
  CHECK_THROWS_AS(parse_config(bad_method), ConfigError);
}

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch_dir("exit");
  std::ofstream(dir / "unknown.cfg") << "dataset = synthetic:intel:200\nwhat = 1\n";
  std::ofstream(dir / "missing.cfg") << "dataset = /nonexistent/file.g2o\n";
  std::ofstream(dir / "ok.cfg") << "dataset = synthetic:intel:200\nmethods = proposed\n";
  CHECK(cli("run --config " + (dir / "unknown.cfg").string() + " --out " + (dir / "a").string()) == 2);
  CHECK(cli("run --config " + (dir / "missing.cfg").string() + " --out " + (dir / "b").string()) == 2);
  CHECK(cli("run --config " + (dir / "ok.cfg").string() + " --method bogus") == 2);
  CHECK(cli("run --config " + (dir / "ok.cfg").string() + " --out " + (dir / "c").string()) == 0);
  CHECK(fs::exists(dir / "c" / "proposed" / "metrics.csv"));
  CHECK(fs::exists(dir / "c" / "paths.csv"));
  CHECK(cli("compare --in " + (dir / "c").string()) == 0);
  CHECK(fs::exists(dir / "c" / "compare.csv"));
}

TEST_CASE("identical seeds give byte-identical outputs") {
  const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  ScenarioConfig c = small();
  c.mode = NetworkMode::adhoc;
  run_scenario(c, a);
  run_scenario(c, b);
  for (const char* m : {"baseline", "nofennel", "proposed"}) {
    CHECK(slurp(a / m / "metrics.csv") == slurp(b / m / "metrics.csv"));
    CHECK(slurp(a / m / "events.jsonl") == slurp(b / m / "events.jsonl"));
  }
}

TEST_CASE("one robot has no cut and no communication") {
  ScenarioConfig c = small();
  c.n_robots = 1;
  const ScenarioResult r = run_scenario(c, std::nullopt);
  for (const auto& m : r.methods) {
    CHECK(m.lambda_cut == 0.0);
    CHECK(m.comm_volume_total == 0);
  }
}

TEST_CASE("metrics csv header is stable") {
  const fs::path dir = scratch_dir("schema");
  ScenarioConfig c = small();
  c.methods = {Method::proposed};
  run_scenario(c, dir);
  const std::string csv = slurp(dir / "proposed" / "metrics.csv");
  CHECK(csv.substr(0, csv.find('\n')) == kMetricsCsvHeader);
}

TEST_CASE("compare ratios and absent methods") {
  MethodSummary s;
  s.time_sim = 2.0;
  s.comm_volume_total = 100;
  std::vector<RunRow> rows;
  for (Method m : {Method::baseline, Method::proposed}) {
    RunRow r;
    r.dataset = "d";
    r.solver = "dgs";
    r.n_robots = 10;
    r.summary = s;
    r.summary.method = m;
    rows.push_back(r);
  }
  const Comparison c = compare(rows);
  REQUIRE(c.rows.size() == 3);
  CHECK(c.rows[2].speedup == 1.0);
  CHECK(c.rows[2].comm_reduction == 1.0);
  CHECK_FALSE(c.rows[1].summary.has_value());
  CHECK(format_table(c).find("(absent)") != std::string::npos);
  rows[1].seed = 99;
  CHECK_THROWS_AS(compare(rows), ConfigError);
}

TEST_CASE("summary survives a json round trip") {
  MethodSummary s;
  s.method = Method::nofennel;
  s.solves = 12;
  s.lambda_imb = 1.25;
  s.comm_volume_total = 77;
  const MethodSummary t = summary_from_json(to_json(s));
  CHECK(t.method == Method::nofennel);
  CHECK(t.solves == 12);
  CHECK(t.lambda_imb == 1.25);
  CHECK(t.comm_volume_total == 77);
}
