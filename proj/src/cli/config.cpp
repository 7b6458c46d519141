#include "bdpgo/cli/config.hpp"

#include "bdpgo/core/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bdpgo {

SolverKind parse_solver(const std::string& s) {
  if (s == "dgs") return SolverKind::dgs;
  if (s == "asapp") return SolverKind::asapp;
  throw ConfigError("unknown solver '" + s + "'");
}

std::string to_string(SolverKind s) { return s == SolverKind::dgs ? "dgs" : "asapp"; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <typename T>
T number(const std::string& v) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) throw ConfigError("bad number '" + v + "'");
  return out;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"dataset", [](ScenarioConfig& c, const std::string& v) { c.dataset = v; }},
      {"n_robots", [](ScenarioConfig& c, const std::string& v) { c.n_robots = number<int>(v); }},
      {"mode", [](ScenarioConfig& c, const std::string& v) { c.mode = parse_network_mode(v); }},
      {"radius", [](ScenarioConfig& c, const std::string& v) { c.radius = number<double>(v); }},
      {"failures",
       [](ScenarioConfig& c, const std::string& v) {
         c.failures.clear();
         for (const auto& item : split_list(v)) {
           const auto at = item.find('@');
           if (at == std::string::npos) throw ConfigError("failure '" + item + "' is not robot@tick");
           c.failures.push_back({number<int>(trim(item.substr(0, at))), number<std::size_t>(trim(item.substr(at + 1)))});
         }
       }},
      {"dn", [](ScenarioConfig& c, const std::string& v) { c.dn = number<std::size_t>(v); }},
      {"gamma", [](ScenarioConfig& c, const std::string& v) { c.gamma = number<double>(v); }},
      {"nu", [](ScenarioConfig& c, const std::string& v) { c.nu = number<double>(v); }},
      {"balance_tol", [](ScenarioConfig& c, const std::string& v) { c.balance_tol = number<double>(v); }},
      {"migration_weight", [](ScenarioConfig& c, const std::string& v) { c.migration_weight = number<double>(v); }},
      {"methods",
       [](ScenarioConfig& c, const std::string& v) {
         c.methods.clear();
         for (const auto& m : split_list(v)) c.methods.push_back(parse_method(m));
         if (c.methods.empty()) throw ConfigError("methods is empty");
       }},
      {"solver", [](ScenarioConfig& c, const std::string& v) { c.solver = parse_solver(v); }},
      {"solve_every", [](ScenarioConfig& c, const std::string& v) { c.solve_every = number<std::size_t>(v); }},
      {"dgs_max_iters", [](ScenarioConfig& c, const std::string& v) { c.dgs_max_iters = number<int>(v); }},
      {"dgs_stop_tol", [](ScenarioConfig& c, const std::string& v) { c.dgs_stop_tol = number<double>(v); }},
      {"dgs_unit_cost", [](ScenarioConfig& c, const std::string& v) { c.dgs_unit_cost = number<double>(v); }},
      {"asapp_step", [](ScenarioConfig& c, const std::string& v) { c.asapp_step = number<double>(v); }},
      {"asapp_budget", [](ScenarioConfig& c, const std::string& v) { c.asapp_budget = number<double>(v); }},
      {"asapp_rate", [](ScenarioConfig& c, const std::string& v) { c.asapp_rate = number<double>(v); }},
      {"sigma_p", [](ScenarioConfig& c, const std::string& v) { c.sigma_p = number<std::uint64_t>(v); }},
      {"path_balance", [](ScenarioConfig& c, const std::string& v) { c.path_balance = parse_path_balance(v); }},
      {"timing", [](ScenarioConfig& c, const std::string& v) { c.timing = parse_stream_timing(v); }},
      {"seed", [](ScenarioConfig& c, const std::string& v) { c.seed = number<std::uint64_t>(v); }},
  };
  return table;
}

void validate(const ScenarioConfig& c) {
  if (c.n_robots < 1) throw ConfigError("n_robots must be >= 1");
  if (!(c.radius > 0)) throw ConfigError("radius must be positive");
  if (!(c.gamma > 1)) throw ConfigError("gamma must exceed 1");
  if (!(c.nu >= 1)) throw ConfigError("nu must be >= 1");
  if (!(c.balance_tol >= 1)) throw ConfigError("balance_tol must be >= 1");
  if (!(c.migration_weight >= 0)) throw ConfigError("migration_weight must be >= 0");
  if (c.dgs_max_iters < 1) throw ConfigError("dgs_max_iters must be >= 1");
  if (!(c.asapp_step > 0)) throw ConfigError("asapp_step must be positive");
  if (!(c.asapp_budget > 0) || !(c.asapp_rate > 0)) throw ConfigError("asapp budget and rate must be positive");
  if (c.sigma_p < 1) throw ConfigError("sigma_p must be >= 1");
  for (const auto& f : c.failures)
    if (f.robot < 0 || f.robot >= c.n_robots) throw ConfigError("failure names robot " + std::to_string(f.robot));
}

}  // namespace

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    try {
      it->second(c, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const ParameterError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in);
}

nlohmann::json to_json(const ScenarioConfig& c) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : c.failures) failures.push_back({{"robot", f.robot}, {"tick", f.tick}});
  std::vector<std::string> methods;
  for (auto m : c.methods) methods.push_back(to_string(m));
  return {{"dataset", c.dataset},           {"n_robots", c.n_robots},
          {"mode", to_string(c.mode)},      {"radius", c.radius},
          {"failures", failures},           {"dn", c.dn},
          {"gamma", c.gamma},               {"nu", c.nu},
          {"balance_tol", c.balance_tol},   {"migration_weight", c.migration_weight},
          {"methods", methods},             {"solver", to_string(c.solver)},
          {"solve_every", c.solve_every},   {"dgs_max_iters", c.dgs_max_iters},
          {"dgs_stop_tol", c.dgs_stop_tol}, {"dgs_unit_cost", c.dgs_unit_cost},
          {"asapp_step", c.asapp_step},     {"asapp_budget", c.asapp_budget},
          {"asapp_rate", c.asapp_rate},     {"sigma_p", c.sigma_p},
          {"path_balance", to_string(c.path_balance)}, {"timing", to_string(c.timing)},
          {"seed", c.seed}};
}

}  // namespace bdpgo
