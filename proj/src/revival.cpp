#include "creutz/revival.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "creutz/error.h"

namespace creutz {

namespace {

void require_uniform(const std::vector<double>& times) {
  if (times.size() < 3) throw std::invalid_argument("series too short");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw std::invalid_argument("time grid must be increasing");
  for (std::size_t i = 2; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - dt) > 1e-6 * dt) {
      throw std::invalid_argument("revival detection needs a uniform time grid");
    }
  }
}

}  // namespace

RevivalPrediction predict_revival(const QuenchSpec& spec, int q_max, double tol) {
  if (std::abs(std::sin(spec.theta_post)) > 1e-12) {
    throw DomainError(
        "revival prediction needs a quench onto theta = 0 or pi "
        "(got theta_post=" +
        std::to_string(spec.theta_post) + ")");
  }
  const LadderParams& lp = spec.params;
  RevivalPrediction pred;
  pred.group_velocity = group_velocity(lp);
  const auto angle = detect_rational_angle(lp, q_max, tol);
  if (!angle) {
    throw DomainError("gap-closing angle is not rational with q <= " + std::to_string(q_max));
  }
  pred.angle = *angle;
  pred.base = commensurate_base(*angle);
  pred.effective_n = std::lcm(pred.base, static_cast<long>(lp.n_rungs));
  pred.commensurate = pred.effective_n == lp.n_rungs;
  pred.period = static_cast<double>(pred.effective_n) / pred.group_velocity;
  pred.reliable_until = 5.0 * pred.period;
  return pred;
}

RevivalOptions revival_options(const RevivalPrediction& prediction) {
  RevivalOptions opts;
  opts.mean_window = std::make_pair(0.2 * prediction.period, 0.8 * prediction.period);
  return opts;
}

RevivalDetection detect_revivals(const LESeries& series, const RevivalOptions& options) {
  const auto& t = series.times;
  const auto& le = series.le;
  require_uniform(t);
  if (options.window < 1) throw std::invalid_argument("window must be >= 1");
  const std::size_t w = static_cast<std::size_t>(options.window);
  const std::size_t n = t.size();
  if (n < 2 * w + 3) throw std::invalid_argument("series shorter than the window");

  const auto [lo, hi] =
      options.mean_window.value_or(std::make_pair(0.1 * t.back(), 0.35 * t.back()));
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] >= lo && t[i] <= hi) {
      sum += le[i];
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("mean-level window holds no samples");

  RevivalDetection det;
  det.mean_level = sum / static_cast<double>(count);
  det.margin = options.margin.value_or(options.margin_fraction * (1.0 - det.mean_level));
  const double threshold = det.mean_level + det.margin;

  std::size_t start = 0;
  while (start < n && le[start] >= threshold) ++start;
  if (start == n) throw DomainError("echo never decays below the revival threshold");
  det.relaxation_time = t[start];

  const double dt = t[1] - t[0];
  for (std::size_t i = std::max(start, w); i + w < n; ++i) {
    if (le[i] <= threshold) continue;
    bool peak = true;
    for (std::size_t j = i - w; j < i && peak; ++j) peak = le[j] < le[i];
    for (std::size_t j = i + 1; j <= i + w && peak; ++j) peak = le[j] <= le[i];
    if (!peak) continue;

    const double ym = le[i - 1], y0 = le[i], yp = le[i + 1];
    const double curv = ym - 2.0 * y0 + yp;
    double shift = 0.0;
    if (curv < 0.0) shift = std::clamp(0.5 * (ym - yp) / curv, -0.5, 0.5);
    det.revival_times.push_back(t[i] + shift * dt);
    det.revival_levels.push_back(y0 - 0.25 * (ym - yp) * shift);
    i += w;
  }
  if (det.revival_times.empty()) {
    throw DomainError("no echo maximum clears mean_level + margin");
  }
  det.first_revival = det.revival_times.front();
  return det;
}

LESeries revival_series(const QuenchSpec& spec, const RevivalPrediction& prediction, double periods,
                        int points_per_period) {
  if (!(periods > 0.0) || points_per_period < 2) {
    throw std::invalid_argument("revival series needs periods > 0 and >= 2 points");
  }
  const double t_max = periods * prediction.period;
  const int n_points = static_cast<int>(std::ceil(periods * points_per_period)) + 1;
  const auto times = uniform_times(t_max, n_points);
  return loschmidt_echo(spec, times, false);
}

}  // namespace creutz
