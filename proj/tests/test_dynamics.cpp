#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "twist/dynamics.hpp"

using namespace twist;
using twist::testing::reference_gains;

namespace {

PendulumParams bench_pendulum() {
  return PendulumParams::from_physical(0.0474, 0.11, 3.11e-3, 9.81, 2.43e-4, 0.0);
}

}  // namespace

TEST_CASE("twisting control law sign evaluation") {
  const Gains g = reference_gains();
  CHECK(twisting_control(State(1.0, -1.0), g) == doctest::Approx(-26.61).epsilon(1e-12));
  CHECK(twisting_control(State(-0.5, 0.2), g) == doctest::Approx(26.61).epsilon(1e-12));
  CHECK(twisting_control(State(0.0, 0.0), g) == 0.0);  // sgn(0) = 0
}

TEST_CASE("twisting control range and symmetry") {
  const Gains g = reference_gains();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const State x(dist(rng), dist(rng));
    const double u = twisting_control(x, g);
    CHECK(std::abs(u) <= g.mu1 + g.mu2);
    // Full authority exactly when both switching terms pull the same way.
    if (x[0] * x[1] > 0.0)
      CHECK(std::abs(u) == doctest::Approx(g.mu1 + g.mu2).epsilon(1e-12));
    else if (x[0] * x[1] < 0.0)
      CHECK(std::abs(u) == doctest::Approx(g.mu2 - g.mu1).epsilon(1e-12));
    CHECK(twisting_control(-x, g) == doctest::Approx(-u).epsilon(1e-12));
  }
}

TEST_CASE("lyapunov function values and positive definiteness") {
  const Gains g = reference_gains();
  CHECK(lyapunov_v(State(0.0, 0.0), g) == 0.0);

  // 0.9*R/mu2 on the x1 axis sits at V = 1.8 for R = 2.
  CHECK(lyapunov_v(State(0.9 * 2.0 / 33.24, 0.0), g) == doctest::Approx(1.8).epsilon(1e-12));
  // 0.8*sqrt(2R) on the x2 axis sits at V = 1.28.
  CHECK(lyapunov_v(State(0.0, 1.6), g) == doctest::Approx(1.28).epsilon(1e-12));

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int i = 0; i < 2000; ++i) {
    const State x(dist(rng), dist(rng));
    if (x[0] == 0.0 && x[1] == 0.0) continue;
    CHECK(lyapunov_v(x, g) > 0.0);
  }
}

TEST_CASE("double integrator right-hand side") {
  CHECK(double_integrator_rhs(State(0.0, 0.0), 0.0, 0.0) == Vec2(0.0, 0.0));

  const Vec2 d = double_integrator_rhs(State(1.0, 2.0), -26.61, 0.19);
  CHECK(d[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(-26.42).epsilon(1e-12));

  // The disturbance enters additively.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const State x(dist(rng), dist(rng));
    const double u = dist(rng), w1 = dist(rng), w2 = dist(rng);
    const Vec2 diff = double_integrator_rhs(x, u, w1 + w2) - double_integrator_rhs(x, u, w1);
    CHECK(diff[0] == 0.0);
    CHECK(diff[1] == doctest::Approx(w2).epsilon(1e-12));
  }
}

TEST_CASE("pendulum parameters derive the input coefficient") {
  const auto pp = bench_pendulum();
  CHECK(pp.b == 1.0 / (pp.m * pp.l * pp.l + pp.J));
  CHECK(pp.b == doctest::Approx(271.477980421008).epsilon(1e-12));

  CHECK_THROWS_AS((void)PendulumParams::from_physical(0.0, 0.1, 0.1, 9.81, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)PendulumParams::from_physical(0.1, 0.1, 0.1, 9.81, -1.0),
                  std::invalid_argument);
}

TEST_CASE("disturbance lift: torque amplitude 7e-4 maps to omega bound 0.19") {
  const auto pp = bench_pendulum();
  CHECK(pp.b * 7e-4 == doctest::Approx(0.190034586294706).epsilon(1e-9));
  CHECK(std::abs(pp.b * 7e-4 - 0.19) < 5e-4);  // the bound quoted to two decimals
}

TEST_CASE("compensating torque") {
  const auto pp = bench_pendulum();
  CHECK(compensating_torque(State(0.0, 0.0), pp, 0.0) == 0.0);

  // At (0, 1.6) the twisting command is -mu1; gravity vanishes at x1+r = 0.
  const double u = twisting_control(State(0.0, 1.6), reference_gains());
  CHECK(u == doctest::Approx(-6.63).epsilon(1e-12));
  CHECK(compensating_torque(State(0.0, 1.6), pp, u) ==
        doctest::Approx(-0.0240330702).epsilon(1e-8));
}

TEST_CASE("pendulum equilibrium") {
  const auto pp = bench_pendulum();
  const Vec2 d = pendulum_rhs(State(0.0, 0.0), pp, 0.0, 0.0);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 0.0);
}

TEST_CASE("compensation identity: pendulum reduces to the double integrator") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> m_dist(0.02, 2.0);
  std::uniform_real_distribution<double> l_dist(0.05, 1.0);
  std::uniform_real_distribution<double> J_dist(1e-3, 0.5);
  std::uniform_real_distribution<double> fv_dist(0.0, 0.01);
  std::uniform_real_distribution<double> r_dist(-3.14, 3.14);
  std::uniform_real_distribution<double> x_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> w_dist(-0.5, 0.5);

  const Gains g = reference_gains();
  for (int i = 0; i < 2000; ++i) {
    const auto pp = PendulumParams::from_physical(m_dist(rng), l_dist(rng), J_dist(rng), 9.81,
                                                  fv_dist(rng), r_dist(rng));
    const State x(x_dist(rng), x_dist(rng));
    const double u = twisting_control(x, g);
    const double omega = w_dist(rng);
    const double d = omega / pp.b;

    const Vec2 pend = pendulum_rhs(x, pp, compensating_torque(x, pp, u), d);
    const Vec2 integ = double_integrator_rhs(x, u, pp.b * d);
    CHECK(std::abs(pend[0] - integ[0]) <= 1e-12);
    CHECK(std::abs(pend[1] - integ[1]) <= 1e-12);
  }
}

TEST_CASE("disturbance profiles evaluate per their kind") {
  const State anywhere(0.3, -0.7);
  CHECK(evaluate_disturbance(DisturbanceProfile::zero(), 12.7, anywhere) == 0.0);

  CHECK(evaluate_disturbance(DisturbanceProfile::constant(0.19, +1.0), 0.0, anywhere) ==
        doctest::Approx(0.19));
  CHECK(evaluate_disturbance(DisturbanceProfile::constant(0.19, -1.0), 5.0, anywhere) ==
        doctest::Approx(-0.19));

  // amplitude * sin(w t) at w = 2, t = pi/4 hits the peak.
  const auto sinus = DisturbanceProfile::sinusoid(0.190034586294706, 2.0);
  CHECK(evaluate_disturbance(sinus, std::acos(-1.0) / 4.0, anywhere) ==
        doctest::Approx(0.190034586294706).epsilon(1e-9));

  // Adversarial: -sign*amplitude*sgn(x2).
  const auto adv = DisturbanceProfile::adversarial(0.2, +1.0);
  CHECK(evaluate_disturbance(adv, 0.0, State(1.0, -3.0)) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(evaluate_disturbance(adv, 0.0, State(1.0, 3.0)) == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(evaluate_disturbance(adv, 0.0, State(1.0, 0.0)) == 0.0);

  // The flipped orientation sustains the velocity sign.
  const auto adv_worst = DisturbanceProfile::adversarial(0.2, -1.0);
  CHECK(evaluate_disturbance(adv_worst, 0.0, State(1.0, -3.0)) ==
        doctest::Approx(-0.2).epsilon(1e-12));
}

TEST_CASE("every profile is bounded by its amplitude") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> t_dist(0.0, 20.0);
  std::uniform_real_distribution<double> x_dist(-4.0, 4.0);
  const DisturbanceProfile profiles[] = {
      DisturbanceProfile::zero(),
      DisturbanceProfile::constant(0.2, -1.0),
      DisturbanceProfile::sinusoid(0.19, 2.0),
      DisturbanceProfile::adversarial(0.2, -1.0),
  };
  for (const auto& profile : profiles) {
    for (int i = 0; i < 500; ++i) {
      const double w = evaluate_disturbance(profile, t_dist(rng), State(x_dist(rng), x_dist(rng)));
      CHECK(std::abs(w) <= profile.amplitude);
    }
  }
}
