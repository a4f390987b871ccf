#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <random>
#include <tuple>

#include "creutz/error.h"
#include "creutz/model.h"
#include "doctest.h"
#include "test_support.h"

using namespace creutz;
using creutz::testing::pi;

namespace {

bool on_grid(double k, int n) {
  for (double kj : allowed_modes(n).wavenumbers) {
    if (std::abs(kj - k) < 1e-9) return true;
  }
  return false;
}

// Symmetric one-sided slopes of |gap| around its zero: the gap is |linear|
// there, so a plain central difference would vanish.
double slope_at_zero(const LadderParams& p, double k, double h) {
  return (mode_data(p, k + h).gap + mode_data(p, k - h).gap - 2.0 * mode_data(p, k).gap) /
         (2.0 * h);
}

}  // namespace

TEST_CASE("allowed modes") {
  const auto g4 = allowed_modes(4);
  REQUIRE(g4.wavenumbers.size() == 4);
  CHECK(g4.wavenumbers[0] == 0.0);
  CHECK(g4.wavenumbers[1] == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(g4.wavenumbers[2] == doctest::Approx(pi).epsilon(1e-15));
  CHECK(g4.wavenumbers[3] == doctest::Approx(3 * pi / 2).epsilon(1e-15));
  CHECK(g4.delta_k == doctest::Approx(pi / 2));

  CHECK(on_grid(2 * pi * 33 / 100, 100));
  CHECK_FALSE(on_grid(2 * pi / 3, 100));
  CHECK(on_grid(2 * pi / 3, 3));

  for (int n : {2, 7, 64}) {
    const auto g = allowed_modes(n);
    REQUIRE(g.wavenumbers.size() == static_cast<std::size_t>(n));
    for (std::size_t j = 1; j < g.wavenumbers.size(); ++j) {
      CHECK(g.wavenumbers[j] - g.wavenumbers[j - 1] == doctest::Approx(g.delta_k));
    }
  }
  CHECK_THROWS_AS(allowed_modes(1), std::invalid_argument);
}

TEST_CASE("ladder validation and angle canonicalization") {
  CHECK_THROWS_AS(make_ladder(1, 0.0, 1, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_ladder(1, 1, -1, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_ladder(1, 1, 1, 0, 1), std::invalid_argument);
  CHECK(canonical_angle(-pi) == doctest::Approx(pi));
  CHECK(canonical_angle(pi) == doctest::Approx(pi));
  CHECK(canonical_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(canonical_angle(0.25 * pi) == 0.25 * pi);
}

TEST_CASE("mode data at reference points") {
  const auto p = testing::ladder(1, 1, 4);
  CHECK(mode_data(p, 2 * pi / 3).gap == doctest::Approx(0.0).epsilon(1e-12));
  const ModeData m0 = mode_data(p, 0.0);
  CHECK(m0.eps_qp == doctest::Approx(3.0));
  CHECK(m0.gap == doctest::Approx(6.0));
}

TEST_CASE("band energies match direct 2x2 diagonalization") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> hop(0.1, 2.5), ang(-pi, pi), kk(0, 2 * pi);
  for (int draw = 0; draw < 1000; ++draw) {
    const LadderParams p = make_ladder(hop(rng), hop(rng), hop(rng), ang(rng), 4);
    const double k = kk(rng);
    const ModeData m = mode_data(p, k);

    const auto h = bloch_matrix(p, k);
    Eigen::Matrix2d mat;
    mat << h[0], h[1], h[2], h[3];
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(mat);
    CHECK(std::abs(es.eigenvalues()(0) - m.e_alpha) < 1e-12);
    CHECK(std::abs(es.eigenvalues()(1) - m.e_beta) < 1e-12);

    const Eigen::Vector2d a(m.alpha_vec[0], m.alpha_vec[1]);
    CHECK((mat * a - m.e_alpha * a).norm() < 1e-12);
    const Eigen::Vector2d b(m.beta_vec[0], m.beta_vec[1]);
    CHECK((mat * b - m.e_beta * b).norm() < 1e-12);

    const double sk = 2 * p.j_h * std::sin(k) * std::sin(p.theta);
    CHECK(std::abs(m.gap * m.gap - 4 * (m.eps_qp * m.eps_qp + sk * sk)) <
          1e-12 * (1 + m.gap * m.gap));
    CHECK(std::abs(m.e_beta - m.e_alpha - m.gap) < 1e-12);
    CHECK(std::abs(m.e_alpha + m.e_beta -
                   (-4 * p.j_h * std::cos(k) * std::cos(p.theta) - 2 * p.j_v)) < 1e-12);
  }
}

TEST_CASE("gamma follows the two-argument arctangent") {
  const auto p = testing::ladder(1, 1, 4, 0.3);
  for (double k : {0.1, 1.0, 2.0, 4.0}) {
    const ModeData m = mode_data(p, k);
    CHECK(m.gamma == doctest::Approx(std::atan2(2 * m.eps_qp, m.eps_q - m.eps_p)).epsilon(1e-10));
  }
}

TEST_CASE("spectral symmetry and flux parity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int n : {5, 12, 31}) {
    const auto p = testing::ladder(1.2, 0.7, n, ang(rng));
    const auto grid = allowed_modes(n);
    for (int j = 1; j < n; ++j) {
      CHECK(mode_data(p, grid.wavenumbers[j]).gap ==
            doctest::Approx(mode_data(p, 2 * pi - grid.wavenumbers[j]).gap).epsilon(1e-12));
      CHECK(mode_data(p, grid.wavenumbers[j]).e_alpha ==
            mode_data(with_theta(p, -p.theta), grid.wavenumbers[j]).e_alpha);
    }
  }
}

TEST_CASE("critical wavenumbers") {
  auto [a, b] = critical_wavenumbers(testing::ladder(1, 1, 6));
  CHECK(a == doctest::Approx(2 * pi / 3));
  CHECK(b == doctest::Approx(4 * pi / 3));

  const auto p2 = testing::root3_ladder(12);
  std::tie(a, b) = critical_wavenumbers(p2);
  CHECK(a == doctest::Approx(5 * pi / 6));
  CHECK(b == doctest::Approx(7 * pi / 6));
  CHECK(mode_data(p2, a).gap < 1e-12);
  CHECK(mode_data(p2, b).gap < 1e-12);
  CHECK(a + b == doctest::Approx(2 * pi));

  CHECK_THROWS_AS(critical_wavenumbers(testing::ladder(1, 2, 6)), DomainError);
  CHECK_THROWS_AS(critical_wavenumbers(make_ladder(1.0, 1.0, 1.5, 0, 6)), DomainError);
}

TEST_CASE("rational gap-closing angle") {
  auto r = detect_rational_angle(testing::unit_ladder(3), 64, 1e-9);
  REQUIRE(r);
  CHECK(r->p == 1);
  CHECK(r->q == 3);

  r = detect_rational_angle(testing::root3_ladder(12), 64, 1e-9);
  REQUIRE(r);
  CHECK(r->p == 1);
  CHECK(r->q == 6);

  CHECK(std::abs((std::sqrt(3.0) - 1) / (2 * std::sqrt(2.0)) - std::cos(5 * pi / 12)) < 1e-12);
  r = detect_rational_angle(testing::root2_ladder(24), 64, 1e-9);
  REQUIRE(r);
  CHECK(r->p == 5);
  CHECK(r->q == 12);

  CHECK_FALSE(detect_rational_angle(testing::ladder(1, 1.234567, 4), 50, 1e-12));
}

TEST_CASE("commensurate base") {
  CHECK(commensurate_base({1, 3}) == 3);
  CHECK(commensurate_base({1, 6}) == 12);
  CHECK(commensurate_base({5, 12}) == 24);
  CHECK_THROWS_AS(commensurate_base({2, 4}), std::invalid_argument);

  // base | N  <=>  both gap-closing wavenumbers are on the grid.
  for (int q = 2; q <= 12; ++q) {
    for (int p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const RationalAngle angle{p, q};
      const double km = pi * (q - p) / q, kp = pi * (q + p) / q;
      for (int n = 2; n <= 200; ++n) {
        const bool grid = on_grid(km, n) && on_grid(kp, n);
        CHECK_MESSAGE(is_commensurate(angle, n) == grid, "p=", p, " q=", q, " N=", n);
      }
    }
  }
}

TEST_CASE("group velocity") {
  CHECK(group_velocity(testing::unit_ladder(3)) ==
        doctest::Approx(2 * std::sqrt(3.0)).epsilon(1e-13));
  CHECK(group_velocity(testing::root3_ladder(12)) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(group_velocity(testing::root2_ladder(24)) ==
        doctest::Approx(2 * std::sqrt(4 + 2 * std::sqrt(3.0))).epsilon(1e-13));

  for (const auto& p :
       {testing::unit_ladder(3), testing::root3_ladder(12), testing::root2_ladder(24)}) {
    const auto [km, kp] = critical_wavenumbers(p);
    const double v = group_velocity(p);
    CHECK(std::abs(slope_at_zero(p, km, 1e-6) - v) < 1e-6);
    CHECK(std::abs(slope_at_zero(p, kp, 1e-6) - v) < 1e-6);
  }
  CHECK_THROWS_AS(group_velocity(testing::ladder(1, 2.5, 4)), DomainError);
}

TEST_CASE("ground-state energy") {
  // k = 0: -2 - 3 - 1; k = pi: 2 - 1 - 1.
  CHECK(ground_state_energy(testing::ladder(1, 1, 2)) == doctest::Approx(-6.0).epsilon(1e-14));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (int i = 0; i < 50; ++i) {
    const double th = ang(rng);
    const auto p = testing::ladder(1, 0.8, 17, th);
    CHECK(ground_state_energy(p) == ground_state_energy(with_theta(p, -th)));
  }

  for (int n : {100, 200, 400}) {
    const double e1 = ground_state_energy(testing::ladder(1, 1, n, 0.3 * pi));
    const double e2 = ground_state_energy(testing::ladder(1, 1, 2 * n, 0.3 * pi));
    CHECK(std::abs(e2 / e1 - 2.0) < 0.01);
  }
}
