#include "creutz/thermo.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace creutz {

namespace {

constexpr int kMaxDistributionRungs = 16;

// Sorts by work and folds neighbours within kWorkMergeTolerance into their
// probability-weighted mean.
std::vector<WorkOutcome> merge_outcomes(std::vector<WorkOutcome> outcomes) {
  std::sort(outcomes.begin(), outcomes.end(),
            [](const WorkOutcome& a, const WorkOutcome& b) { return a.work < b.work; });
  std::vector<WorkOutcome> merged;
  merged.reserve(outcomes.size());
  double anchor = 0.0;
  for (const auto& o : outcomes) {
    if (!merged.empty() && o.work - anchor <= kWorkMergeTolerance) {
      auto& m = merged.back();
      const double p = m.probability + o.probability;
      if (p > 0.0) m.work = (m.work * m.probability + o.work * o.probability) / p;
      m.probability = p;
    } else {
      merged.push_back(o);
      anchor = o.work;
    }
  }
  return merged;
}

}  // namespace

WorkStats work_stats(const QuenchSpec& spec) {
  WorkStats w;
  w.theta_pre = spec.theta_pre;
  w.theta_post = spec.theta_post;
  w.n_rungs = spec.params.n_rungs;
  double e_pre = 0.0, e_post = 0.0;
  for (const auto& m : quench_modes(spec)) {
    w.average_work += m.e_alpha_post * m.cos2_eta + m.e_beta_post * m.sin2_eta - m.e_alpha_pre;
    w.irreversible_work += m.sin2_eta * m.gap_post;
    e_pre += m.e_alpha_pre;
    e_post += m.e_alpha_post;
  }
  w.delta_f = e_post - e_pre;
  return w;
}

double WorkDistribution::mean() const {
  double s = 0.0;
  for (const auto& o : outcomes) s += o.work * o.probability;
  return s;
}

double WorkDistribution::second_moment() const {
  double s = 0.0;
  for (const auto& o : outcomes) s += o.work * o.work * o.probability;
  return s;
}

double WorkDistribution::total_probability() const {
  double s = 0.0;
  for (const auto& o : outcomes) s += o.probability;
  return s;
}

WorkDistribution work_distribution(std::span<const QuenchModeData> modes) {
  WorkDistribution dist;
  std::vector<WorkOutcome> current{{0.0, 1.0}};
  for (const auto& m : modes) {
    const double stay = m.e_alpha_post - m.e_alpha_pre;
    const double excite = m.e_beta_post - m.e_alpha_pre;
    if (m.sin2_eta <= 0.0 || m.cos2_eta <= 0.0) {
      const double w = m.sin2_eta <= 0.0 ? stay : excite;
      for (auto& o : current) o.work += w;
      continue;
    }
    ++dist.active_modes;
    std::vector<WorkOutcome> next;
    next.reserve(2 * current.size());
    for (const auto& o : current) {
      next.push_back({o.work + stay, o.probability * m.cos2_eta});
      next.push_back({o.work + excite, o.probability * m.sin2_eta});
    }
    current = merge_outcomes(std::move(next));
  }
  dist.outcomes = merge_outcomes(std::move(current));
  return dist;
}

WorkDistribution work_distribution(const QuenchSpec& spec) {
  if (spec.params.n_rungs > kMaxDistributionRungs) {
    throw std::invalid_argument("work distribution limited to n_rungs <= 16 (got " +
                                std::to_string(spec.params.n_rungs) + ")");
  }
  const auto modes = quench_modes(spec);
  return work_distribution(modes);
}

std::vector<WorkStats> scan_theta2(const LadderParams& params, double theta_pre,
                                   std::span<const double> theta_post_grid) {
  validate(params);
  for (double theta : theta_post_grid) canonical_angle(theta);
  std::vector<WorkStats> out(theta_post_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i) {
    out[i] = work_stats(make_quench(params, theta_pre, theta_post_grid[i]));
  }
  return out;
}

}  // namespace creutz
