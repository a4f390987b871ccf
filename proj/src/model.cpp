#include "creutz/model.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "creutz/error.h"

namespace creutz {

using std::numbers::pi;

namespace {

bool same_hopping(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

// Checks the regime in which the gap closes at theta = 0, pi and returns j.
double critical_hopping(const LadderParams& params) {
  if (!same_hopping(params.j_h, params.j_d)) {
    throw DomainError("criticality analysis requires j_h == j_d (got j_h=" +
                      std::to_string(params.j_h) + ", j_d=" + std::to_string(params.j_d) + ")");
  }
  const double j = params.j_h;
  if (!(params.j_v < 2.0 * j)) {
    throw DomainError("gap never closes for j_v >= 2j (j_v=" + std::to_string(params.j_v) +
                      ", j=" + std::to_string(j) + ")");
  }
  return j;
}

}  // namespace

double canonical_angle(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("angle must be finite");
  double r = std::remainder(theta, 2.0 * pi);
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

void validate(const LadderParams& params) {
  if (!std::isfinite(params.j_h) || !std::isfinite(params.j_v) || !std::isfinite(params.j_d) ||
      !std::isfinite(params.theta)) {
    throw std::invalid_argument("ladder parameters must be finite");
  }
  if (!(params.j_v > 0.0)) throw std::invalid_argument("j_v must be positive");
  if (!(params.j_d > 0.0)) throw std::invalid_argument("j_d must be positive");
  if (params.n_rungs < 2) {
    throw std::invalid_argument("n_rungs must be at least 2 (got " +
                                std::to_string(params.n_rungs) + ")");
  }
}

LadderParams make_ladder(double j_h, double j_v, double j_d, double theta, int n_rungs) {
  LadderParams params{j_h, j_v, j_d, theta, n_rungs};
  validate(params);
  params.theta = canonical_angle(theta);
  return params;
}

LadderParams with_theta(LadderParams params, double theta) {
  params.theta = canonical_angle(theta);
  return params;
}

ModeGrid allowed_modes(int n_rungs) {
  if (n_rungs < 2) {
    throw std::invalid_argument("n_rungs must be at least 2 (got " + std::to_string(n_rungs) + ")");
  }
  ModeGrid grid;
  grid.n_rungs = n_rungs;
  grid.delta_k = 2.0 * pi / n_rungs;
  grid.wavenumbers.reserve(n_rungs);
  for (int j = 0; j < n_rungs; ++j) {
    grid.wavenumbers.push_back(2.0 * pi * j / n_rungs);
  }
  return grid;
}

ModeData mode_data(const LadderParams& params, double k) {
  ModeData m;
  m.k = k;
  m.eps_q = 2.0 * params.j_h * std::cos(k - params.theta);
  m.eps_p = 2.0 * params.j_h * std::cos(k + params.theta);
  m.eps_qp = 2.0 * params.j_d * std::cos(k) + params.j_v;

  // H(k) = -(mean * 1 + [[d, c], [c, -d]]); d is 2 j_h sin k sin theta
  // written without the cancellation in eps_q - eps_p.
  const double mean = -2.0 * params.j_h * std::cos(k) * std::cos(params.theta);
  const double d = 2.0 * params.j_h * std::sin(k) * std::sin(params.theta);
  const double c = m.eps_qp;
  const double r = std::hypot(c, d);

  m.gamma = std::atan2(2.0 * c, 2.0 * d);
  m.e_alpha = mean - r - params.j_v;
  m.e_beta = mean + r - params.j_v;
  m.gap = 2.0 * r;

  // Lower band of H is the top eigenvector of [[d, c], [c, -d]].
  std::array<double, 2> v{1.0, 0.0};
  if (r > 0.0) {
    v = d >= 0.0 ? std::array<double, 2>{d + r, c} : std::array<double, 2>{c, r - d};
    const double norm = std::hypot(v[0], v[1]);
    v[0] /= norm;
    v[1] /= norm;
  }
  m.alpha_vec = v;
  m.beta_vec = {-v[1], v[0]};
  return m;
}

std::array<double, 4> bloch_matrix(const LadderParams& params, double k) {
  const double eq = 2.0 * params.j_h * std::cos(k - params.theta);
  const double ep = 2.0 * params.j_h * std::cos(k + params.theta);
  const double eqp = 2.0 * params.j_d * std::cos(k) + params.j_v;
  return {-eq - params.j_v, -eqp, -eqp, -ep - params.j_v};
}

std::pair<double, double> critical_wavenumbers(const LadderParams& params) {
  const double j = critical_hopping(params);
  const double a = std::acos(params.j_v / (2.0 * j));
  return {pi - a, pi + a};
}

std::optional<RationalAngle> detect_rational_angle(const LadderParams& params, int q_max,
                                                   double tol) {
  const double j = critical_hopping(params);
  const double x = std::acos(params.j_v / (2.0 * j)) / pi;

  // Convergents h/k of the continued fraction of x.
  long h_prev = 1, h_prev2 = 0;
  long k_prev = 0, k_prev2 = 1;
  double r = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(r);
    if (a > 1e9) break;
    const long ai = static_cast<long>(a);
    const long h = ai * h_prev + h_prev2;
    const long k = ai * k_prev + k_prev2;
    if (k > q_max) break;
    if (h > 0 && h < k && std::abs(x - static_cast<double>(h) / k) < tol) {
      return RationalAngle{static_cast<int>(h), static_cast<int>(k)};
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

long commensurate_base(RationalAngle angle) {
  if (angle.p <= 0 || angle.q <= angle.p || std::gcd(angle.p, angle.q) != 1) {
    throw std::invalid_argument("rational angle needs coprime 0 < p < q");
  }
  const long two_q = 2L * angle.q;
  const long minus = two_q / std::gcd(two_q, static_cast<long>(angle.q - angle.p));
  const long plus = two_q / std::gcd(two_q, static_cast<long>(angle.q + angle.p));
  return std::lcm(minus, plus);
}

bool is_commensurate(RationalAngle angle, int n_rungs) {
  return n_rungs > 0 && n_rungs % commensurate_base(angle) == 0;
}

double group_velocity(const LadderParams& params) {
  const double j = critical_hopping(params);
  const auto [k_minus, k_plus] = critical_wavenumbers(params);
  (void)k_plus;
  return 4.0 * j * std::abs(std::sin(k_minus));
}

double ground_state_energy(const LadderParams& params) {
  validate(params);
  double total = 0.0;
  for (double k : allowed_modes(params.n_rungs).wavenumbers) {
    total += mode_data(params, k).e_alpha;
  }
  return total;
}

}  // namespace creutz
