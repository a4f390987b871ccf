#pragma once

#include <complex>
#include <span>
#include <vector>

#include "creutz/model.h"

namespace creutz {

/// Sudden flux quench theta_pre -> theta_post on a fixed ladder.
/// `params.theta` is ignored; use pre() / post().
struct QuenchSpec {
  LadderParams params;
  double theta_pre = 0.0;
  double theta_post = 0.0;

  LadderParams pre() const { return with_theta(params, theta_pre); }
  LadderParams post() const { return with_theta(params, theta_post); }
};

/// Validates the ladder and canonicalizes both angles.
QuenchSpec make_quench(const LadderParams& params, double theta_pre, double theta_post);

/// Per-mode quench data. cos2_eta is |<alpha(post)|alpha(pre)>|^2 and
/// sin2_eta is |<beta(post)|alpha(pre)>|^2; eta is in [0, pi/2].
struct QuenchModeData {
  double k = 0.0;
  double amplitude = 0.0;  ///< A_k = sin^2(2 eta)
  double gap_post = 0.0;
  double eta = 0.0;
  double cos2_eta = 1.0;
  double sin2_eta = 0.0;
  double e_alpha_post = 0.0;
  double e_beta_post = 0.0;
  double e_alpha_pre = 0.0;
};

QuenchModeData quench_mode(const QuenchSpec& spec, double k);

/// quench_mode() over every allowed wavenumber.
std::vector<QuenchModeData> quench_modes(const QuenchSpec& spec);

/// cos^2 of half the Bogoliubov angle difference. Agrees with cos2_eta from
/// the overlaps; kept as an independent cross-check.
double cos2_eta_from_angles(const QuenchSpec& spec, double k);

/// Loschmidt amplitude, echo and rate on a caller-supplied time grid.
///
/// `log_le` is the primary quantity (the echo itself underflows for large
/// ladders); `le = exp(log_le)` and `rate = -log_le / n_rungs`, which is
/// +infinity where a mode factor vanishes exactly. `la` is empty when the
/// series was computed without the amplitude.
struct LESeries {
  std::vector<double> times;
  std::vector<double> le;
  std::vector<double> log_le;
  std::vector<double> rate;
  std::vector<std::complex<double>> la;
  int n_rungs = 0;
};

/// Throws std::invalid_argument for negative or non-finite times.
LESeries loschmidt_echo(const QuenchSpec& spec, std::span<const double> times,
                        bool with_amplitude = true);

/// n_points evenly spaced times on [0, t_max].
std::vector<double> uniform_times(double t_max, int n_points);

/// Exact many-body result from the real-space single-particle matrices.
struct OracleResult {
  double le = 1.0;
  std::complex<double> la{1.0, 0.0};
};

/// Which Slater determinant of the pre-quench Hamiltonian starts the
/// evolution: the N lowest or the N highest single-particle orbitals.
enum class Filling { lower, upper };

/// Determinant-overlap Loschmidt amplitude det(C^dag exp(-i H2 t) C) for
/// ladders with n_rungs <= 12, using the 2N x 2N real-space hopping matrices.
/// Energies carry the same -j_v shift as the band energies.
///
/// Throws std::invalid_argument for n_rungs > 12 or negative t, and
/// DomainError when the chosen Slater determinant is not unique.
OracleResult exact_le_oracle(const QuenchSpec& spec, double t, Filling filling = Filling::lower);

}  // namespace creutz
