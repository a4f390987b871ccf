#include "commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "creutz/dqpt.h"
#include "creutz/error.h"
#include "creutz/revival.h"
#include "creutz/thermo.h"

namespace creutz::cli {

namespace {

using std::numbers::pi;

LadderParams ladder(const RunConfig& c, double theta_pi) {
  return make_ladder(c.j_h, c.j_v, c.j_d, theta_pi * pi, c.n);
}

QuenchSpec quench(const RunConfig& c) {
  return make_quench(ladder(c, 0.0), c.theta1 * pi, c.theta2 * pi);
}

void echo_ladder(Table& t, const RunConfig& c) {
  t.inputs.insert(
      t.inputs.end(),
      {{"j_h", c.j_h}, {"j_v", c.j_v}, {"j_d", c.j_d}, {"n", static_cast<long long>(c.n)}});
}

void echo_quench(Table& t, const RunConfig& c) {
  echo_ladder(t, c);
  t.inputs.insert(t.inputs.end(), {{"theta1", c.theta1}, {"theta2", c.theta2}});
}

void echo_grid(Table& t, const RunConfig& c) {
  t.inputs.insert(t.inputs.end(),
                  {{"t_max", c.t_max}, {"n_points", static_cast<long long>(c.n_points)}});
}

Table spectrum(const RunConfig& c) {
  Table t;
  echo_ladder(t, c);
  t.inputs.emplace_back("theta", c.theta);
  const auto p = ladder(c, c.theta);
  t.summary.emplace_back("ground_state_energy", ground_state_energy(p));
  t.columns = {"k", "eps_q", "eps_p", "eps_qp", "e_alpha", "e_beta", "gap"};
  for (double k : allowed_modes(c.n).wavenumbers) {
    const ModeData m = mode_data(p, k);
    t.rows.push_back({k, m.eps_q, m.eps_p, m.eps_qp, m.e_alpha, m.e_beta, m.gap});
  }
  return t;
}

Table echo(const RunConfig& c) {
  Table t;
  echo_quench(t, c);
  echo_grid(t, c);
  const auto s = loschmidt_echo(quench(c), uniform_times(c.t_max, c.n_points));
  t.columns = {"t", "le", "log_le", "rate", "la_re", "la_im"};
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    t.rows.push_back({s.times[i], s.le[i], s.log_le[i], s.rate[i], s.la[i].real(), s.la[i].imag()});
  }
  return t;
}

Table revival(const RunConfig& c) {
  Table t;
  echo_quench(t, c);
  t.inputs.insert(t.inputs.end(),
                  {{"q_max", static_cast<long long>(c.q_max)},
                   {"tol", c.tol},
                   {"margin", c.margin ? Cell{*c.margin} : Cell{std::string("auto")}},
                   {"margin_fraction", c.margin_fraction},
                   {"window", static_cast<long long>(c.window)},
                   {"periods", c.periods},
                   {"points_per_period", static_cast<long long>(c.points_per_period)}});
  const auto spec = quench(c);
  const auto pred = predict_revival(spec, c.q_max, c.tol);
  RevivalOptions opts = revival_options(pred);
  opts.margin = c.margin;
  opts.margin_fraction = c.margin_fraction;
  opts.window = c.window;
  const auto series = revival_series(spec, pred, c.periods, c.points_per_period);
  const auto det = detect_revivals(series, opts);

  t.summary = {{"angle_p", static_cast<long long>(pred.angle.p)},
               {"angle_q", static_cast<long long>(pred.angle.q)},
               {"base", static_cast<long long>(pred.base)},
               {"effective_n", static_cast<long long>(pred.effective_n)},
               {"commensurate", pred.commensurate},
               {"group_velocity", pred.group_velocity},
               {"predicted_period", pred.period},
               {"reliable_until", pred.reliable_until},
               {"first_revival", det.first_revival},
               {"mean_level", det.mean_level},
               {"margin", det.margin},
               {"relaxation_time", det.relaxation_time},
               {"revival_count", static_cast<long long>(det.revival_times.size())}};
  t.columns = {"index", "time", "le", "predicted_time"};
  for (std::size_t i = 0; i < det.revival_times.size(); ++i) {
    t.rows.push_back({static_cast<long long>(i + 1), det.revival_times[i], det.revival_levels[i],
                      static_cast<double>(i + 1) * pred.period});
  }
  return t;
}

Table dqpt(const RunConfig& c) {
  Table t;
  echo_quench(t, c);
  echo_grid(t, c);
  t.inputs.insert(t.inputs.end(), {{"sensitivity", c.sensitivity},
                                   {"k_samples", static_cast<long long>(c.k_samples)}});
  const auto spec = quench(c);
  const auto modes = solve_critical_modes(spec);
  const auto scan = fisher_zero_lines(spec, 0, 0, c.k_samples);

  t.summary = {{"dqpt_possible", dqpt_possible(spec)},
               {"fisher_crossing", scan.crosses_imaginary_axis()},
               {"critical_modes", static_cast<long long>(modes.size())}};
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::string p = "mode" + std::to_string(i) + ".";
    t.summary.emplace_back(p + "k_star", modes[i].k_star);
    t.summary.emplace_back(p + "cos_k_star", std::cos(modes[i].k_star));
    t.summary.emplace_back(p + "gap_star", modes[i].gap_star);
    t.summary.emplace_back(p + "t_star", modes[i].t_star);
    t.summary.emplace_back(p + "tangent", modes[i].tangent);
  }
  if (std::abs(std::sin(spec.theta_post)) <= 1e-12) {
    t.summary.emplace_back("zero_mode_on_grid", finite_size_dqpt_gate(spec));
  }

  t.columns = {"kind", "time", "mode", "n"};
  if (!modes.empty()) {
    for (const auto& e : predict_dqpt_events(spec, c.t_max)) {
      t.rows.push_back({std::string("predicted"), e.time, static_cast<long long>(e.mode),
                        static_cast<long long>(e.n)});
    }
  }
  const auto series = loschmidt_echo(spec, uniform_times(c.t_max, c.n_points), false);
  const auto cusps = detect_cusps(series, c.sensitivity);
  t.summary.emplace_back("cusps", static_cast<long long>(cusps.size()));
  for (double time : cusps) {
    t.rows.push_back({std::string("cusp"), time, -1LL, -1LL});
  }
  return t;
}

Table work(const RunConfig& c) {
  Table t;
  echo_quench(t, c);
  t.inputs.emplace_back("distribution", c.distribution);
  const auto spec = quench(c);
  const auto w = work_stats(spec);
  t.summary = {{"average_work", w.average_work},
               {"delta_f", w.delta_f},
               {"irreversible_work", w.irreversible_work},
               {"average_work_per_rung", w.average_work_per_rung()},
               {"delta_f_per_rung", w.delta_f_per_rung()},
               {"irreversible_work_per_rung", w.irreversible_work_per_rung()}};
  if (c.distribution) {
    const auto d = work_distribution(spec);
    t.summary.emplace_back("active_modes", static_cast<long long>(d.active_modes));
    t.summary.emplace_back("outcomes", static_cast<long long>(d.outcomes.size()));
    t.columns = {"work", "probability"};
    for (const auto& o : d.outcomes) t.rows.push_back({o.work, o.probability});
    return t;
  }
  t.columns = {"k",           "cos2_eta",     "sin2_eta",    "amplitude",
               "e_alpha_pre", "e_alpha_post", "e_beta_post", "gap_post"};
  for (const auto& m : quench_modes(spec)) {
    t.rows.push_back({m.k, m.cos2_eta, m.sin2_eta, m.amplitude, m.e_alpha_pre, m.e_alpha_post,
                      m.e_beta_post, m.gap_post});
  }
  return t;
}

Table scan(const RunConfig& c) {
  Table t;
  echo_ladder(t, c);
  t.inputs.insert(t.inputs.end(), {{"theta1", c.theta1},
                                   {"theta2_min", c.theta2_min},
                                   {"theta2_max", c.theta2_max},
                                   {"theta2_points", static_cast<long long>(c.theta2_points)}});
  std::vector<double> grid_pi(c.theta2_points), grid(c.theta2_points);
  for (int i = 0; i < c.theta2_points; ++i) {
    grid_pi[i] = c.theta2_min + (c.theta2_max - c.theta2_min) * i / (c.theta2_points - 1);
    grid[i] = grid_pi[i] * pi;
  }
  const auto stats = scan_theta2(ladder(c, 0.0), c.theta1 * pi, grid);
  t.columns = {"theta2",
               "average_work",
               "delta_f",
               "irreversible_work",
               "average_work_per_rung",
               "delta_f_per_rung",
               "irreversible_work_per_rung"};
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& w = stats[i];
    t.rows.push_back({grid_pi[i], w.average_work, w.delta_f, w.irreversible_work,
                      w.average_work_per_rung(), w.delta_f_per_rung(),
                      w.irreversible_work_per_rung()});
  }
  return t;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Table run_command(const RunConfig& config) {
  validate_config(config);
  Table t;
  try {
    switch (config.command) {
      case Command::spectrum:
        t = spectrum(config);
        break;
      case Command::le:
        t = echo(config);
        break;
      case Command::revival:
        t = revival(config);
        break;
      case Command::dqpt:
        t = dqpt(config);
        break;
      case Command::work:
        t = work(config);
        break;
      case Command::scan:
        t = scan(config);
        break;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  t.command = command_name(config.command);
  return t;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quench dynamics of the Creutz ladder", "creutz"};
  std::string command, config_path, out_path, format = "csv";
  std::vector<std::string> sets;
  bool timestamp = false, scan_flag = false;
  app.add_option("command", command, "spectrum | le | revival | dqpt | work | scan")
      ->required()
      ->check(CLI::IsMember({"spectrum", "le", "revival", "dqpt", "work", "scan"}));
  app.add_option("--config", config_path, "flat key = value file");
  app.add_option("--set", sets, "key=value override, repeatable; wins over --config")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--timestamp", timestamp, "add a UTC timestamp to the metadata");
  app.add_flag("--scan", scan_flag, "with `work`: scan theta2 (same as `scan`)");
  app.set_version_flag("--version", CREUTZ_VERSION);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << CREUTZ_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "creutz: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    RunConfig config;
    config.command = parse_command(command);
    if (scan_flag) {
      if (config.command != Command::work) throw ConfigError("--scan only applies to `work`");
      config.command = Command::scan;
    }
    if (!config_path.empty()) load_config_file(config, config_path);
    for (const auto& s : sets) apply_override(config, s);
    if (timestamp) config.timestamp = true;

    const Table table = run_command(config);
    std::optional<std::string> stamp;
    if (config.timestamp) stamp = utc_timestamp();
    std::ostringstream buffer;
    if (format == "json")
      write_json(table, buffer, stamp);
    else
      write_csv(table, buffer, stamp);

    if (out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw IoError("cannot open '" + out_path + "' for writing");
      file << buffer.str();
      file.close();
      if (!file) throw IoError("failed writing '" + out_path + "'");
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "creutz: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "creutz: domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const IoError& e) {
    err << "creutz: I/O error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace creutz::cli
