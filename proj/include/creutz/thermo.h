#pragma once

#include <span>
#include <vector>

#include "creutz/quench.h"

namespace creutz {

/// Zero-temperature work statistics of a sudden quench.
struct WorkStats {
  double theta_pre = 0.0;
  double theta_post = 0.0;
  double average_work = 0.0;
  double delta_f = 0.0;  ///< E_g(post) - E_g(pre)
  double irreversible_work = 0.0;
  int n_rungs = 0;

  double average_work_per_rung() const { return average_work / n_rungs; }
  double delta_f_per_rung() const { return delta_f / n_rungs; }
  double irreversible_work_per_rung() const { return irreversible_work / n_rungs; }
};

/// <W> = sum_k [e_alpha2 cos^2 eta + e_beta2 sin^2 eta - e_alpha1],
/// W_irr = sum_k sin^2 eta * gap2 (each term non-negative).
WorkStats work_stats(const QuenchSpec& spec);

struct WorkOutcome {
  double work = 0.0;
  double probability = 0.0;
};

struct WorkDistribution {
  std::vector<WorkOutcome> outcomes;  ///< sorted by work
  int active_modes = 0;               ///< modes with both outcomes possible

  double mean() const;
  double second_moment() const;
  double total_probability() const;
};

/// Outcomes closer than this in work are merged (probability-weighted).
inline constexpr double kWorkMergeTolerance = 1e-9;

/// Exact distribution p(W) from the two-outcome (stay / excite) factorization
/// over modes. Throws std::invalid_argument for n_rungs > 16.
WorkDistribution work_distribution(const QuenchSpec& spec);

/// Convolution over an explicit set of modes; no size guard.
WorkDistribution work_distribution(std::span<const QuenchModeData> modes);

/// work_stats() for each theta_post on the grid, in grid order.
std::vector<WorkStats> scan_theta2(const LadderParams& params, double theta_pre,
                                   std::span<const double> theta_post_grid);

}  // namespace creutz
