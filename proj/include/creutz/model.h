#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace creutz {

/// A periodic two-leg Creutz ladder.
///
/// Angles are in radians. `theta` is the Peierls phase on the leg hoppings;
/// the flux per plaquette is theta/pi. Construct through make_ladder() to get
/// validation and the canonical angle range (-pi, pi].
struct LadderParams {
  double j_h = 1.0;  ///< horizontal (leg) hopping
  double j_v = 1.0;  ///< vertical (rung) hopping, > 0
  double j_d = 1.0;  ///< diagonal hopping, > 0
  double theta = 0.0;
  int n_rungs = 2;  ///< sites per leg, >= 2
};

LadderParams make_ladder(double j_h, double j_v, double j_d, double theta, int n_rungs);

/// Throws std::invalid_argument if any LadderParams invariant is violated.
void validate(const LadderParams& params);

/// Maps an angle onto (-pi, pi].
double canonical_angle(double theta);

LadderParams with_theta(LadderParams params, double theta);

/// Spectral data of the 2x2 Bloch Hamiltonian at one wavenumber.
///
/// Band energies use the shifted convention e = eps - j_v throughout.
/// `alpha_vec` / `beta_vec` are the lower / upper band eigenvectors in the
/// (q, p) leg basis, real and normalized.
struct ModeData {
  double k = 0.0;
  double eps_q = 0.0;
  double eps_p = 0.0;
  double eps_qp = 0.0;
  double gamma = 0.0;
  double e_alpha = 0.0;
  double e_beta = 0.0;
  double gap = 0.0;
  std::array<double, 2> alpha_vec{1.0, 0.0};
  std::array<double, 2> beta_vec{0.0, 1.0};
};

struct ModeGrid {
  int n_rungs = 0;
  double delta_k = 0.0;
  std::vector<double> wavenumbers;
};

/// arccos(j_v / 2j) / pi = p / q in lowest terms.
struct RationalAngle {
  int p = 0;
  int q = 1;
};

/// k_j = 2 pi j / N for j = 0..N-1.
ModeGrid allowed_modes(int n_rungs);

ModeData mode_data(const LadderParams& params, double k);

/// The Bloch matrix H(k) = -[[eps_q, eps_qp], [eps_qp, eps_p]] shifted by
/// -j_v, row-major.
std::array<double, 4> bloch_matrix(const LadderParams& params, double k);

/// Gap-closing wavenumbers (pi - a, pi + a), a = arccos(j_v / 2j), of the
/// critical flux theta = 0 or pi.
///
/// Requires j_h == j_d and j_v < 2 j; throws DomainError otherwise.
std::pair<double, double> critical_wavenumbers(const LadderParams& params);

/// Continued-fraction search for arccos(j_v / 2j) / pi = p / q with
/// q <= q_max. Returns nullopt when no convergent is within `tol`.
std::optional<RationalAngle> detect_rational_angle(const LadderParams& params, int q_max,
                                                   double tol);

/// Smallest N for which both gap-closing wavenumbers are on the mode grid,
/// i.e. the least integer multiple of 2q/(q-p) and 2q/(q+p).
long commensurate_base(RationalAngle angle);

/// True iff commensurate_base(angle) divides n_rungs.
bool is_commensurate(RationalAngle angle, int n_rungs);

/// |d gap / dk| at the gap-closing wavenumbers of the critical flux:
/// 4 j sin(k_c). Ignores params.theta.
double group_velocity(const LadderParams& params);

/// Sum of the lower-band energy over all allowed modes.
double ground_state_energy(const LadderParams& params);

}  // namespace creutz
