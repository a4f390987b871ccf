#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "creutz/quench.h"

namespace creutz {

/// First-revival prediction for a quench onto a critical flux.
///
/// effective_n = lcm(base, n_rungs) and period = effective_n / |v_g|.
/// The estimate comes from a linearized gap and is flagged unreliable
/// past `reliable_until` (five periods).
struct RevivalPrediction {
  long base = 0;
  long effective_n = 0;
  double group_velocity = 0.0;
  double period = 0.0;
  bool commensurate = false;
  double reliable_until = 0.0;
  RationalAngle angle;
};

/// Requires theta_post in {0, pi}, j_h == j_d, j_v < 2j, and a rational
/// gap-closing angle at the given resolution; throws DomainError otherwise.
RevivalPrediction predict_revival(const QuenchSpec& spec, int q_max = 64, double tol = 1e-9);

struct RevivalOptions {
  /// Height above the mean level a maximum has to clear. Defaults to
  /// margin_fraction * (1 - mean_level).
  std::optional<double> margin;
  double margin_fraction = 0.5;
  /// Half-width, in grid points, of the local-maximum window.
  int window = 5;
  /// Time interval averaged for the mean level. Defaults to
  /// [0.1, 0.35] x the series length.
  std::optional<std::pair<double, double>> mean_window;
};

/// Mean-level window [0.2 T, 0.8 T] around a predicted period T.
RevivalOptions revival_options(const RevivalPrediction& prediction);

struct RevivalDetection {
  std::vector<double> revival_times;
  std::vector<double> revival_levels;
  double first_revival = 0.0;
  double mean_level = 0.0;
  double margin = 0.0;
  /// Heuristic: first time the echo drops below mean_level + margin.
  double relaxation_time = 0.0;
};

/// Finds revivals as local maxima of the echo that rise above
/// mean_level + margin after the initial decay. Peak times are refined by a
/// parabola through the three samples around each maximum.
///
/// Requires a uniform time grid; throws DomainError when no maximum clears
/// the margin.
RevivalDetection detect_revivals(const LESeries& series, const RevivalOptions& options = {});

/// Echo on [0, periods x T] with `points_per_period` samples per predicted
/// period: the grid detect_revivals() is tuned for.
LESeries revival_series(const QuenchSpec& spec, const RevivalPrediction& prediction,
                        double periods = 2.2, int points_per_period = 4000);

}  // namespace creutz
