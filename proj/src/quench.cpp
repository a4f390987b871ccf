#include "creutz/quench.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace creutz {

QuenchSpec make_quench(const LadderParams& params, double theta_pre, double theta_post) {
  validate(params);
  QuenchSpec spec;
  spec.params = params;
  spec.theta_pre = canonical_angle(theta_pre);
  spec.theta_post = canonical_angle(theta_post);
  spec.params.theta = spec.theta_pre;
  return spec;
}

QuenchModeData quench_mode(const QuenchSpec& spec, double k) {
  const ModeData pre = mode_data(spec.pre(), k);
  const ModeData post = mode_data(spec.post(), k);
  const auto& a1 = pre.alpha_vec;
  const auto& a2 = post.alpha_vec;

  // <alpha2|alpha1> and <beta2|alpha1>; the second is exactly zero when the
  // two eigenvectors coincide.
  const double same = a2[0] * a1[0] + a2[1] * a1[1];
  const double cross = a2[0] * a1[1] - a2[1] * a1[0];
  double cos2 = same * same;
  double sin2 = cross * cross;
  const double norm = cos2 + sin2;
  cos2 /= norm;
  sin2 /= norm;

  QuenchModeData q;
  q.k = k;
  q.cos2_eta = cos2;
  q.sin2_eta = sin2;
  q.eta = std::atan2(std::sqrt(sin2), std::sqrt(cos2));
  q.amplitude = std::min(1.0, 4.0 * cos2 * sin2);
  q.gap_post = post.gap;
  q.e_alpha_post = post.e_alpha;
  q.e_beta_post = post.e_beta;
  q.e_alpha_pre = pre.e_alpha;
  return q;
}

std::vector<QuenchModeData> quench_modes(const QuenchSpec& spec) {
  const ModeGrid grid = allowed_modes(spec.params.n_rungs);
  std::vector<QuenchModeData> modes;
  modes.reserve(grid.wavenumbers.size());
  for (double k : grid.wavenumbers) modes.push_back(quench_mode(spec, k));
  return modes;
}

double cos2_eta_from_angles(const QuenchSpec& spec, double k) {
  const double g1 = mode_data(spec.pre(), k).gamma;
  const double g2 = mode_data(spec.post(), k).gamma;
  const double c = std::cos(0.5 * (g1 - g2));
  return c * c;
}

std::vector<double> uniform_times(double t_max, int n_points) {
  if (n_points < 2) throw std::invalid_argument("n_points must be at least 2");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("t_max must be positive and finite");
  }
  std::vector<double> times(n_points);
  for (int i = 0; i < n_points; ++i) {
    times[i] = t_max * static_cast<double>(i) / (n_points - 1);
  }
  return times;
}

LESeries loschmidt_echo(const QuenchSpec& spec, std::span<const double> times,
                        bool with_amplitude) {
  for (double t : times) {
    if (!std::isfinite(t) || t < 0.0) {
      throw std::invalid_argument("times must be finite and non-negative (got " +
                                  std::to_string(t) + ")");
    }
  }
  const std::vector<QuenchModeData> modes = quench_modes(spec);
  double alpha_sum = 0.0;
  for (const auto& m : modes) alpha_sum += m.e_alpha_post;

  const std::size_t n_t = times.size();
  LESeries s;
  s.n_rungs = spec.params.n_rungs;
  s.times.assign(times.begin(), times.end());
  s.le.resize(n_t);
  s.log_le.resize(n_t);
  s.rate.resize(n_t);
  if (with_amplitude) s.la.resize(n_t);

  const double n = static_cast<double>(spec.params.n_rungs);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_t); ++i) {
    const double t = times[i];
    double log_le = 0.0;
    double phase = -alpha_sum * t;
    for (const auto& m : modes) {
      const double sn = std::sin(0.5 * m.gap_post * t);
      log_le += std::log1p(-m.amplitude * sn * sn);
      if (with_amplitude) {
        const double x = m.gap_post * t;
        phase += std::atan2(-m.sin2_eta * std::sin(x), m.cos2_eta + m.sin2_eta * std::cos(x));
      }
    }
    s.log_le[i] = log_le;
    s.le[i] = std::exp(log_le);
    s.rate[i] = log_le == 0.0 ? 0.0 : -log_le / n;
    if (with_amplitude) s.la[i] = std::polar(std::exp(0.5 * log_le), phase);
  }
  return s;
}

}  // namespace creutz
