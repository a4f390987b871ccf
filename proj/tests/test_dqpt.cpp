#include <algorithm>
#include <cmath>
#include <random>

#include "creutz/dqpt.h"
#include "creutz/error.h"
#include "doctest.h"
#include "test_support.h"

using namespace creutz;
using creutz::testing::pi;

namespace {

QuenchSpec cross_phase(int n = 100) {
  return make_quench(testing::ladder(1, 1, n), 0.25 * pi, -0.25 * pi);
}

// Roots of cos^2 eta - 1/2 on (0, pi) by sign scan plus bisection; uses the
// eigenvector overlaps only.
std::vector<double> bisection_roots(const QuenchSpec& spec, int samples = 20000) {
  auto f = [&](double k) { return quench_mode(spec, k).cos2_eta - 0.5; };
  std::vector<double> roots;
  double a = 1e-9, fa = f(a);
  for (int i = 1; i <= samples; ++i) {
    const double b = pi * i / samples - (i == samples ? 1e-9 : 0.0);
    const double fb = f(b);
    if ((fa < 0) != (fb < 0)) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace

TEST_CASE("dqpt possibility") {
  CHECK(dqpt_possible(cross_phase()));
  CHECK_FALSE(dqpt_possible(make_quench(testing::ladder(1, 1, 10), 0.25 * pi, 0.1 * pi)));
  CHECK(dqpt_possible(make_quench(testing::ladder(1, 1, 10), 0.25 * pi, 0.0)));
}

TEST_CASE("critical modes of the cross-phase quench") {
  const auto spec = cross_phase();
  const auto modes = solve_critical_modes(spec);
  REQUIRE(modes.size() == 2);

  // 6 c^2 + 4 c - 1 = 0.
  const double c_small = (-2 - std::sqrt(10.0)) / 6, c_large = (-2 + std::sqrt(10.0)) / 6;
  CHECK(std::cos(modes[0].k_star) == doctest::Approx(c_large).epsilon(1e-12));
  CHECK(std::cos(modes[1].k_star) == doctest::Approx(c_small).epsilon(1e-12));
  CHECK(modes[0].t_star == doctest::Approx(1.60112).epsilon(1e-5));
  CHECK(modes[1].t_star == doctest::Approx(3.08209).epsilon(1e-5));

  const auto oracle = bisection_roots(spec);
  REQUIRE(oracle.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& m = modes[i];
    CHECK(std::abs(m.k_star - oracle[i]) < 1e-10);
    CHECK(std::abs(critical_mode_residual(spec, m.k_star)) < 1e-10);
    CHECK(std::abs(quench_mode(spec, m.k_star).amplitude - 1.0) < 1e-10);
    CHECK(std::abs(quench_mode(spec, m.mirror_k()).amplitude - 1.0) < 1e-10);
    CHECK(m.gap_star == doctest::Approx(2 * pi / m.t_star));
    CHECK_FALSE(m.tangent);
  }
}

TEST_CASE("the larger-prefactor condition does not give unit amplitude") {
  // (2J cos k + J_v)^2 = -(4J sin k)^2 sin(theta1) sin(theta2):
  // roots cos k = (-1 +- sqrt 22) / 6.
  const auto spec = cross_phase();
  for (double c : {(-1 + std::sqrt(22.0)) / 6, (-1 - std::sqrt(22.0)) / 6}) {
    const double k = std::acos(c);
    const double lhs = std::pow(2 * std::cos(k) + 1, 2);
    const double rhs = -std::pow(4 * std::sin(k), 2) * std::sin(0.25 * pi) * std::sin(-0.25 * pi);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(std::abs(quench_mode(spec, k).amplitude - 1.0) > 0.05);
  }
}

TEST_CASE("quench onto the critical flux gives a tangent root") {
  const auto spec = make_quench(testing::ladder(1, 1, 300), 0.25 * pi, 0.0);
  const auto modes = solve_critical_modes(spec);
  REQUIRE(modes.size() == 1);
  CHECK(modes[0].tangent);
  CHECK(modes[0].k_star == doctest::Approx(2 * pi / 3).epsilon(1e-12));
  CHECK(modes[0].gap_star < 1e-12);
  CHECK(std::isinf(modes[0].t_star));
  CHECK(predict_dqpt_times(spec, 100.0).empty());
}

TEST_CASE("same-phase quench has no critical modes") {
  const auto spec = make_quench(testing::ladder(1, 1, 100), 0.1 * pi, 0.2 * pi);
  CHECK(solve_critical_modes(spec).empty());
  CHECK_THROWS_AS(predict_dqpt_times(spec, 10.0), DomainError);
  CHECK_THROWS_AS(solve_critical_modes(make_quench(make_ladder(1, 1, 2, 0, 8), 0.3, -0.3)),
                  DomainError);
}

TEST_CASE("closed-form modes agree with the overlap oracle on random quenches") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(-pi, pi), jv(0.1, 1.9), jj(0.5, 1.5);
  int checked = 0, mismatched_timescales = 0;
  for (int draw = 0; draw < 300; ++draw) {
    const auto spec = make_quench(testing::ladder(jj(rng), jv(rng), 50), ang(rng), ang(rng));
    const auto modes = solve_critical_modes(spec);
    const auto oracle = bisection_roots(spec, 4000);
    REQUIRE(modes.size() == oracle.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
      CHECK(std::abs(modes[i].k_star - oracle[i]) < 1e-8);
      CHECK(std::abs(critical_mode_residual(spec, modes[i].k_star)) < 1e-10);
      CHECK(std::abs(quench_mode(spec, modes[i].k_star).amplitude - 1.0) < 1e-10);
    }
    // Distinct t* count versus the number of unit-amplitude modes.
    std::vector<double> ts;
    for (const auto& m : modes) ts.push_back(m.t_star);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-9 * a; }),
             ts.end());
    if (ts.size() != oracle.size()) ++mismatched_timescales;
    ++checked;
  }
  CHECK(checked == 300);
  CHECK(mismatched_timescales == 0);
}

TEST_CASE("Fisher zero lines") {
  const auto spec = cross_phase();
  const auto scan = fisher_zero_lines(spec, -1, 2, 4001);
  REQUIRE(scan.lines.size() == 4);
  CHECK(scan.crosses_imaginary_axis());
  CHECK(scan.crossing_k.size() == 4);  // two modes and their mirrors
  const auto modes = solve_critical_modes(spec);
  for (const auto& m : modes) {
    const double k = m.k_star, km = m.mirror_k();
    const auto near = [&](double target) {
      return std::any_of(scan.crossing_k.begin(), scan.crossing_k.end(),
                         [&](double c) { return std::abs(c - target) < 2 * pi / 4001; });
    };
    CHECK(near(k));
    CHECK(near(km));
  }
  for (const auto& line : scan.lines) {
    for (std::size_t i = 0; i < line.k.size(); i += 97) {
      const auto q = quench_mode(spec, line.k[i]);
      CHECK(line.points[i].real() ==
            doctest::Approx(std::log(q.sin2_eta / q.cos2_eta) / q.gap_post).epsilon(1e-12));
      CHECK(line.points[i].imag() ==
            doctest::Approx(pi * (2 * line.n + 1) / q.gap_post).epsilon(1e-12));
    }
  }
  // At a unit-amplitude wavenumber the real part vanishes.
  const auto q = quench_mode(spec, modes[0].k_star);
  CHECK(std::abs(std::log(q.sin2_eta / q.cos2_eta)) < 1e-7);

  const auto same =
      fisher_zero_lines(make_quench(testing::ladder(1, 1, 100), 0.1 * pi, 0.2 * pi), 0, 0, 4000);
  CHECK_FALSE(same.crosses_imaginary_axis());
  CHECK(same.omitted >= 1);  // k = 0 has a zero overlap change

  CHECK_THROWS_AS(fisher_zero_lines(spec, 1, 0, 10), std::invalid_argument);
}

TEST_CASE("crossing exists iff a critical mode exists") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> ang(-pi, pi), jv(0.1, 1.9);
  for (int draw = 0; draw < 100; ++draw) {
    const auto spec = make_quench(testing::ladder(1, jv(rng), 50), ang(rng), ang(rng));
    const bool crosses = fisher_zero_lines(spec, 0, 0, 3001).crosses_imaginary_axis();
    const bool has_modes = dqpt_possible(spec) && !solve_critical_modes(spec).empty();
    CHECK(crosses == has_modes);
  }
}

TEST_CASE("predicted dqpt times") {
  const auto spec = cross_phase();
  const auto modes = solve_critical_modes(spec);
  const auto events = predict_dqpt_events(spec, 10.0);
  const auto times = predict_dqpt_times(spec, 10.0);
  REQUIRE(events.size() == times.size());
  CHECK(times.front() == doctest::Approx(modes[0].t_star / 2));
  CHECK(std::is_sorted(times.begin(), times.end()));
  int from_fast = 0, from_slow = 0;
  for (const auto& e : events) {
    CHECK(e.time == doctest::Approx(modes[e.mode].t_star * (e.n + 0.5)));
    CHECK(e.time <= 10.0);
    (e.mode == 0 ? from_fast : from_slow)++;
  }
  CHECK(from_fast == 6);
  CHECK(from_slow == 3);
}

TEST_CASE("rate-function cusps match the predicted times") {
  const auto spec = cross_phase(9000);
  const double dt = 1e-3;
  const auto series = loschmidt_echo(spec, uniform_times(5.0, 5001), false);
  const auto cusps = detect_cusps(series);
  const auto predicted = predict_dqpt_times(spec, 5.0);
  REQUIRE(cusps.size() == predicted.size());
  for (std::size_t i = 0; i < cusps.size(); ++i) {
    CHECK_MESSAGE(std::abs(cusps[i] - predicted[i]) <= 2 * dt, "cusp ", cusps[i]);
  }

  const auto same = make_quench(testing::ladder(1, 1, 9000), 0.1 * pi, 0.2 * pi);
  CHECK(detect_cusps(loschmidt_echo(same, uniform_times(5.0, 5001), false)).empty());
}

TEST_CASE("cusp detector on synthetic data") {
  LESeries s;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.01 * i;
    s.times.push_back(t);
    s.rate.push_back(std::abs(t - 4.0) + 0.1 * t * t);
  }
  const auto c = detect_cusps(s);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == doctest::Approx(4.0));
  s.rate[700] = std::numeric_limits<double>::infinity();
  CHECK(detect_cusps(s).size() == 2);
}

TEST_CASE("zero-mode gate") {
  CHECK(finite_size_dqpt_gate(make_quench(testing::ladder(1, 1, 300), 0.25 * pi, 0.0)));
  CHECK_FALSE(finite_size_dqpt_gate(make_quench(testing::ladder(1, 1, 100), 0.25 * pi, 0.0)));
  CHECK(finite_size_dqpt_gate(make_quench(testing::root3_ladder(24), 0.25 * pi, 0.0)));
  CHECK_FALSE(finite_size_dqpt_gate(make_quench(testing::root3_ladder(18), 0.25 * pi, 0.0)));
  CHECK_THROWS_AS(finite_size_dqpt_gate(cross_phase()), DomainError);
}

TEST_CASE("the on-grid zero mode carries no oscillation") {
  // With theta = 0 the Bloch matrix at 2 pi / 3 is a multiple of the
  // identity, so that mode's echo factor stays at 1.
  const auto spec = make_quench(testing::ladder(1, 1, 300), 0.25 * pi, 0.0);
  const auto q = quench_mode(spec, 2 * pi / 3);
  CHECK(q.gap_post < 1e-12);
  for (double t : {1.0, 10.0, 1000.0}) {
    CHECK(1 - q.amplitude * std::pow(std::sin(q.gap_post * t / 2), 2) > 1 - 1e-12);
  }
}
