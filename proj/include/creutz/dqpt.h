#pragma once

#include <complex>
#include <vector>

#include "creutz/quench.h"

namespace creutz {

/// A wavenumber where pre- and post-quench lower-band states are at 45
/// degrees (tan^2 eta = 1, A_k = 1). Its mirror 2 pi - k_star carries the
/// same gap. t_star is +infinity when the post-quench gap vanishes there.
struct CriticalMode {
  double k_star = 0.0;  ///< in (0, pi)
  double gap_star = 0.0;
  double t_star = 0.0;
  bool tangent = false;  ///< double root of the critical-mode condition
  double mirror_k() const;
};

/// sin(theta_pre) * sin(theta_post) <= 0.
bool dqpt_possible(const QuenchSpec& spec);

/// (2 j cos k + j_v)^2 + (2 j sin k)^2 sin(theta_pre) sin(theta_post).
/// Zero exactly where A_k = 1.
double critical_mode_residual(const QuenchSpec& spec, double k);

/// Closed-form roots of the critical-mode condition, a quadratic in cos k,
/// each polished with one Newton step in k. Sorted by k_star; empty when
/// dqpt_possible() is false. Requires j_h == j_d (DomainError otherwise).
std::vector<CriticalMode> solve_critical_modes(const QuenchSpec& spec);

struct FisherZeroLine {
  int n = 0;
  std::vector<double> k;
  std::vector<std::complex<double>> points;
};

struct FisherZeroScan {
  std::vector<FisherZeroLine> lines;
  int omitted = 0;  ///< samples with A_k = 0 or a closed gap
  std::vector<double> crossing_k;
  bool crosses_imaginary_axis() const { return !crossing_k.empty(); }
};

/// Lines of zeros z_n(k) = [i pi (2n + 1) + ln tan^2 eta_k] / gap_k of the
/// dynamical partition function for n in [n_min, n_max], sampled on
/// `k_samples` evenly spaced wavenumbers of [0, 2 pi). A line crosses the
/// imaginary axis where ln tan^2 eta changes sign between neighbouring
/// samples; crossing_k holds the interpolated wavenumbers.
FisherZeroScan fisher_zero_lines(const QuenchSpec& spec, int n_min, int n_max, int k_samples);

struct DqptEvent {
  double time = 0.0;
  int mode = 0;  ///< index into solve_critical_modes()
  int n = 0;
};

/// t_star * (n + 1/2) <= t_max for every finite-t_star critical mode,
/// sorted by time. Throws DomainError when there are no critical modes.
std::vector<DqptEvent> predict_dqpt_events(const QuenchSpec& spec, double t_max);
std::vector<double> predict_dqpt_times(const QuenchSpec& spec, double t_max);

/// Times where |second difference of rate| exceeds sensitivity times its
/// median; neighbouring flagged samples (within 3 points) are merged into one
/// cusp at their largest second difference. Samples with infinite rate are
/// always cusps.
std::vector<double> detect_cusps(const LESeries& series, double sensitivity = 20.0);

/// Whether the zero-energy wavenumber of a quench onto theta = 0 or pi lies on
/// the mode grid of the ladder. Throws DomainError for a non-critical target.
bool finite_size_dqpt_gate(const QuenchSpec& spec);

}  // namespace creutz
