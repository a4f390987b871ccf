#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace creutz::cli {

/// Bad configuration: unknown key, malformed value, invalid combination.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable config file or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { spectrum, le, revival, dqpt, work, scan };

Command parse_command(const std::string& name);
std::string command_name(Command c);

/// Everything a run needs. Angles are stored in units of pi, exactly as
/// given; the commands convert.
struct RunConfig {
  Command command = Command::spectrum;

  double j_h = 1.0;
  double j_v = 1.0;
  double j_d = 1.0;
  double theta = 0.0;
  double theta1 = 0.25;
  double theta2 = -0.25;
  int n = 100;

  double t_max = 10.0;
  int n_points = 1001;

  int q_max = 64;
  double tol = 1e-9;
  std::optional<double> margin;
  double margin_fraction = 0.5;
  int window = 5;
  double periods = 2.2;
  int points_per_period = 4000;

  double sensitivity = 20.0;
  int k_samples = 4000;

  double theta2_min = -1.0;
  double theta2_max = 1.0;
  int theta2_points = 401;

  bool distribution = false;
  bool timestamp = false;
};

/// Keys accepted in config files and by --set.
const std::vector<std::string>& config_keys();

/// Applies one `key = value` assignment. `where` prefixes error messages
/// (e.g. "run.cfg:12" or "--set").
void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::string& where);

/// Applies a `key=value` string as given to --set.
void apply_override(RunConfig& config, const std::string& assignment);

/// Reads a flat key-value file: one `key = value` per line, `#` starts a
/// comment. Throws IoError when unreadable, ConfigError with file:line
/// otherwise.
void load_config_file(RunConfig& config, const std::string& path);

/// Range checks that do not depend on the command.
void validate_config(const RunConfig& config);

}  // namespace creutz::cli
