#include "creutz/dqpt.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "creutz/error.h"

namespace creutz {

using std::numbers::pi;

namespace {

double equal_hopping(const LadderParams& lp) {
  if (std::abs(lp.j_h - lp.j_d) > 1e-12 * std::max(std::abs(lp.j_h), lp.j_d)) {
    throw DomainError("critical-mode analysis requires j_h == j_d");
  }
  return lp.j_h;
}

double sine_product(const QuenchSpec& spec) {
  return std::sin(spec.theta_pre) * std::sin(spec.theta_post);
}

}  // namespace

double CriticalMode::mirror_k() const { return 2.0 * pi - k_star; }

bool dqpt_possible(const QuenchSpec& spec) { return sine_product(spec) <= 0.0; }

double critical_mode_residual(const QuenchSpec& spec, double k) {
  const double j = spec.params.j_h;
  const double lhs = 2.0 * j * std::cos(k) + spec.params.j_v;
  const double s = 2.0 * j * std::sin(k);
  return lhs * lhs + s * s * sine_product(spec);
}

std::vector<CriticalMode> solve_critical_modes(const QuenchSpec& spec) {
  const double j = equal_hopping(spec.params);
  const double jv = spec.params.j_v;
  std::vector<CriticalMode> modes;
  if (!dqpt_possible(spec)) return modes;

  // With c = cos k and S = -sin(theta1) sin(theta2) >= 0:
  //   4 j^2 (1 + S) c^2 + 4 j jv c + jv^2 - 4 j^2 S = 0.
  const double S = -sine_product(spec);
  const double inner = S * (4.0 * j * j * (1.0 + S) - jv * jv);
  const double scale = jv * jv;
  if (inner < -1e-14 * scale) return modes;
  const bool tangent = inner <= 1e-14 * scale;
  const double root = tangent ? 0.0 : std::sqrt(inner);
  const double denom = 2.0 * j * (1.0 + S);

  std::vector<double> cosines{(-jv + root) / denom};
  if (!tangent) cosines.push_back((-jv - root) / denom);

  const LadderParams post = spec.post();
  for (double c : cosines) {
    if (!(std::abs(c) < 1.0)) continue;
    double k = std::acos(c);
    // One Newton step on f(k) = (2j cos k + jv)^2 + (2j sin k)^2 s.
    const double s = -S;
    const double a = 2.0 * j * std::cos(k) + jv;
    const double df = -4.0 * j * std::sin(k) * a + 8.0 * j * j * std::sin(k) * std::cos(k) * s;
    if (!tangent && std::abs(df) > 1e-300) {
      const double step = critical_mode_residual(spec, k) / df;
      if (std::abs(step) < 1e-6) k -= step;
    }
    CriticalMode m;
    m.k_star = k;
    m.tangent = tangent;
    m.gap_star = mode_data(post, k).gap;
    // A gap at rounding level is a closed gap (critical target flux).
    m.t_star = m.gap_star > 1e-12 * (j + jv) ? 2.0 * pi / m.gap_star
                                             : std::numeric_limits<double>::infinity();
    modes.push_back(m);
  }
  std::sort(modes.begin(), modes.end(),
            [](const CriticalMode& a, const CriticalMode& b) { return a.k_star < b.k_star; });
  return modes;
}

FisherZeroScan fisher_zero_lines(const QuenchSpec& spec, int n_min, int n_max, int k_samples) {
  if (k_samples < 2) throw std::invalid_argument("k_samples must be at least 2");
  if (n_max < n_min) throw std::invalid_argument("empty branch range");

  FisherZeroScan scan;
  for (int n = n_min; n <= n_max; ++n) scan.lines.push_back(FisherZeroLine{n, {}, {}});

  bool have_prev = false;
  double prev_k = 0.0, prev_re = 0.0;
  for (int i = 0; i < k_samples; ++i) {
    const double k = 2.0 * pi * i / k_samples;
    const QuenchModeData q = quench_mode(spec, k);
    if (q.sin2_eta <= 0.0 || q.cos2_eta <= 0.0 || !(q.gap_post > 0.0)) {
      ++scan.omitted;
      have_prev = false;
      continue;
    }
    const double re = std::log(q.sin2_eta / q.cos2_eta) / q.gap_post;
    for (auto& line : scan.lines) {
      line.k.push_back(k);
      line.points.emplace_back(re, pi * (2.0 * line.n + 1.0) / q.gap_post);
    }
    if (re == 0.0) {
      scan.crossing_k.push_back(k);
    } else if (have_prev && prev_re != 0.0 && (re > 0.0) != (prev_re > 0.0)) {
      scan.crossing_k.push_back(prev_k + (k - prev_k) * prev_re / (prev_re - re));
    }
    have_prev = true;
    prev_k = k;
    prev_re = re;
  }
  return scan;
}

std::vector<DqptEvent> predict_dqpt_events(const QuenchSpec& spec, double t_max) {
  const auto modes = solve_critical_modes(spec);
  if (modes.empty()) throw DomainError("quench has no critical modes, hence no DQPT");
  std::vector<DqptEvent> events;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const double ts = modes[m].t_star;
    if (!std::isfinite(ts)) continue;
    for (int n = 0; ts * (n + 0.5) <= t_max; ++n) {
      events.push_back(DqptEvent{ts * (n + 0.5), static_cast<int>(m), n});
    }
  }
  std::sort(events.begin(), events.end(),
            [](const DqptEvent& a, const DqptEvent& b) { return a.time < b.time; });
  return events;
}

std::vector<double> predict_dqpt_times(const QuenchSpec& spec, double t_max) {
  std::vector<double> times;
  for (const auto& e : predict_dqpt_events(spec, t_max)) times.push_back(e.time);
  return times;
}

std::vector<double> detect_cusps(const LESeries& series, double sensitivity) {
  const auto& t = series.times;
  const auto& r = series.rate;
  const std::size_t n = t.size();
  std::vector<double> cusps;
  if (n < 3) return cusps;

  std::vector<double> d2(n, 0.0);
  std::vector<char> infinite(n, 0);
  std::vector<double> finite_d2;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!std::isfinite(r[i])) {
      infinite[i] = 1;
      continue;
    }
    if (!std::isfinite(r[i - 1]) || !std::isfinite(r[i + 1])) continue;
    d2[i] = std::abs(r[i + 1] - 2.0 * r[i] + r[i - 1]);
    finite_d2.push_back(d2[i]);
  }
  double median = 0.0;
  if (!finite_d2.empty()) {
    auto mid = finite_d2.begin() + static_cast<std::ptrdiff_t>(finite_d2.size() / 2);
    std::nth_element(finite_d2.begin(), mid, finite_d2.end());
    median = *mid;
  }
  const double threshold = sensitivity * median;

  std::size_t best = 0;
  std::size_t last = 0;
  bool open = false;
  auto flush = [&] {
    if (open) cusps.push_back(t[best]);
    open = false;
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool flagged = infinite[i] || (median > 0.0 && d2[i] > threshold);
    if (!flagged) continue;
    if (open && i - last > 3) flush();
    if (!open) {
      open = true;
      best = i;
    } else if (infinite[i] ? !infinite[best] : (!infinite[best] && d2[i] > d2[best])) {
      best = i;
    }
    last = i;
  }
  flush();
  return cusps;
}

bool finite_size_dqpt_gate(const QuenchSpec& spec) {
  if (std::abs(std::sin(spec.theta_post)) > 1e-12) {
    throw DomainError("zero-mode gate applies to quenches onto theta = 0 or pi");
  }
  const int n = spec.params.n_rungs;
  const auto angle = detect_rational_angle(spec.params, n, 1e-9);
  return angle && is_commensurate(*angle, n);
}

}  // namespace creutz
