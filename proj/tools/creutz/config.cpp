#include "config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>

#include "expression.h"

namespace creutz::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double real_value(const std::string& v) { return evaluate_expression(v); }

int int_value(const std::string& v) {
  const double x = evaluate_expression(v);
  if (x != std::floor(x) || std::abs(x) > std::numeric_limits<int>::max()) {
    throw std::invalid_argument("expected an integer, got '" + v + "'");
  }
  return static_cast<int>(x);
}

bool bool_value(const std::string& v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw std::invalid_argument("expected true or false, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    auto real = [&](const char* key, double RunConfig::* field) {
      m[key] = [field](RunConfig& c, const std::string& v) { c.*field = real_value(v); };
    };
    auto integer = [&](const char* key, int RunConfig::* field) {
      m[key] = [field](RunConfig& c, const std::string& v) { c.*field = int_value(v); };
    };
    auto flag = [&](const char* key, bool RunConfig::* field) {
      m[key] = [field](RunConfig& c, const std::string& v) { c.*field = bool_value(v); };
    };
    real("j_h", &RunConfig::j_h);
    real("j_v", &RunConfig::j_v);
    real("j_d", &RunConfig::j_d);
    m["j"] = [](RunConfig& c, const std::string& v) { c.j_h = c.j_d = real_value(v); };
    real("theta", &RunConfig::theta);
    real("theta1", &RunConfig::theta1);
    real("theta2", &RunConfig::theta2);
    integer("n", &RunConfig::n);
    real("t_max", &RunConfig::t_max);
    integer("n_points", &RunConfig::n_points);
    integer("q_max", &RunConfig::q_max);
    real("tol", &RunConfig::tol);
    m["margin"] = [](RunConfig& c, const std::string& v) {
      if (v == "auto")
        c.margin.reset();
      else
        c.margin = real_value(v);
    };
    real("margin_fraction", &RunConfig::margin_fraction);
    integer("window", &RunConfig::window);
    real("periods", &RunConfig::periods);
    integer("points_per_period", &RunConfig::points_per_period);
    real("sensitivity", &RunConfig::sensitivity);
    integer("k_samples", &RunConfig::k_samples);
    real("theta2_min", &RunConfig::theta2_min);
    real("theta2_max", &RunConfig::theta2_max);
    integer("theta2_points", &RunConfig::theta2_points);
    flag("distribution", &RunConfig::distribution);
    flag("timestamp", &RunConfig::timestamp);
    return m;
  }();
  return table;
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "spectrum") return Command::spectrum;
  if (name == "le") return Command::le;
  if (name == "revival") return Command::revival;
  if (name == "dqpt") return Command::dqpt;
  if (name == "work") return Command::work;
  if (name == "scan") return Command::scan;
  throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::spectrum:
      return "spectrum";
    case Command::le:
      return "le";
    case Command::revival:
      return "revival";
    case Command::dqpt:
      return "dqpt";
    case Command::work:
      return "work";
    case Command::scan:
      return "scan";
  }
  return "?";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::string& where) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError(where + ": unknown key '" + key + "'");
  if (value.empty()) throw ConfigError(where + ": missing value for '" + key + "'");
  try {
    it->second(config, value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + key + ": " + e.what());
  }
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("--set " + assignment + ": expected key=value");
  }
  apply_setting(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)),
                "--set " + assignment);
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(number);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
  }
  if (in.bad()) throw IoError("error while reading '" + path + "'");
}

void validate_config(const RunConfig& c) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  need(c.n >= 2, "n must be at least 2");
  need(c.j_v > 0.0, "j_v must be positive");
  need(c.j_h >= 0.0 && c.j_d >= 0.0, "j_h and j_d must be non-negative");
  need(c.t_max > 0.0, "t_max must be positive");
  need(c.n_points >= 2, "n_points must be at least 2");
  need(c.q_max >= 1, "q_max must be positive");
  need(c.tol > 0.0, "tol must be positive");
  need(!c.margin || *c.margin >= 0.0, "margin must be non-negative");
  need(c.margin_fraction > 0.0, "margin_fraction must be positive");
  need(c.window >= 1, "window must be at least 1");
  need(c.periods > 0.0, "periods must be positive");
  need(c.points_per_period >= 10, "points_per_period must be at least 10");
  need(c.sensitivity > 0.0, "sensitivity must be positive");
  need(c.k_samples >= 2, "k_samples must be at least 2");
  need(c.theta2_points >= 2, "theta2_points must be at least 2");
  need(c.theta2_min < c.theta2_max, "theta2_min must be below theta2_max");
}

}  // namespace creutz::cli
