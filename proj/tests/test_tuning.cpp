#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "test_support.hpp"
#include "twist/tuning.hpp"

using namespace twist;
using twist::testing::random_valid_pair;
using twist::testing::random_valid_parameters;
using twist::testing::reference_gains;
using twist::testing::reference_parameters;

TEST_CASE("validate_parameters accepts the reference configuration") {
  const auto report = validate_parameters(reference_parameters());
  CHECK(report.ok());
  CHECK(report.violations().empty());

  // The delta bound is part of the report: sqrt(2*2)*6/4 = 3.
  bool found = false;
  for (const auto& check : report.checks) {
    if (check.name.find("delta >") != std::string::npos) {
      found = true;
      CHECK(check.bound == doctest::Approx(3.0).epsilon(1e-12));
    }
  }
  CHECK(found);
  CHECK(delta_lower_bound(2.0, 5.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("delta exactly at its bound violates the strict inequality") {
  auto p = reference_parameters();
  p.delta = 3.0;
  const auto report = validate_parameters(p);
  CHECK_FALSE(report.ok());
  REQUIRE(report.violations().size() == 1);
  CHECK(report.violations()[0].find("delta") != std::string::npos);
}

TEST_CASE("beta must strictly exceed 1") {
  TuningParameters p{1.0, 1.0, 0.5, 10.0, 0.0, 1.0};
  const auto report = validate_parameters(p);
  CHECK_FALSE(report.ok());
  bool beta_violated = false;
  for (const auto& v : report.violations())
    if (v.find("beta") != std::string::npos) beta_violated = true;
  CHECK(beta_violated);
}

TEST_CASE("non-finite inputs fail a dedicated check") {
  auto p = reference_parameters();
  p.R = std::numeric_limits<double>::quiet_NaN();
  const auto report = validate_parameters(p);
  CHECK_FALSE(report.ok());
  bool finite_violated = false;
  for (const auto& v : report.violations())
    if (v.find("finite") != std::string::npos) finite_violated = true;
  CHECK(finite_violated);

  p.R = std::numeric_limits<double>::infinity();
  CHECK_FALSE(validate_parameters(p).ok());
}

TEST_CASE("oversized delta draws an advisory but stays valid") {
  auto p = reference_parameters();
  p.delta = 31.0;  // > 10x the bound of 3
  const auto report = validate_parameters(p);
  CHECK(report.ok());
  REQUIRE(report.advisories.size() == 1);
  CHECK(report.advisories[0].find("delta") != std::string::npos);

  p.delta = 3.1;
  CHECK(validate_parameters(p).advisories.empty());
}

TEST_CASE("mu1_lower_bound reproduces the reference value") {
  // 2*3.1/(1*sqrt(1 - 5^-2)) + 0.2, evaluated independently.
  CHECK(mu1_lower_bound(reference_parameters()) ==
        doctest::Approx(6.52784850218988).epsilon(1e-12));
}

TEST_CASE("mu1_lower_bound limit and scaling behavior") {
  // beta huge: sqrt(1 - beta^-2) -> 1, so the bound -> 2*delta/Ts + N.
  TuningParameters p{0.1, 1e6, 0.5, 1.0, 0.0, 2.0};
  CHECK(mu1_lower_bound(p) == doctest::Approx(1.0).epsilon(1e-6));

  // Doubling delta doubles the first summand.
  auto a = reference_parameters();
  auto b = a;
  b.delta = 2.0 * a.delta;
  CHECK(mu1_lower_bound(b) - a.N ==
        doctest::Approx(2.0 * (mu1_lower_bound(a) - a.N)).epsilon(1e-12));
}

TEST_CASE("mu1_lower_bound rejects invalid parameters") {
  auto p = reference_parameters();
  p.beta = 0.5;
  CHECK_THROWS_AS((void)mu1_lower_bound(p), std::invalid_argument);
}

TEST_CASE("mu2_lower_bound picks the binding term") {
  const auto p = reference_parameters();

  // With the reference mu1 the beta*mu1 term dominates: 5 * 6.63 = 33.15.
  CHECK(mu2_lower_bound(p, 6.63) == doctest::Approx(33.15).epsilon(1e-12));

  // With a tiny mu1, sqrt(R/2) = 1 dominates.
  CHECK(mu2_lower_bound(p, 0.01) == doctest::Approx(1.0).epsilon(1e-12));

  // rho -> 0 removes the rho terms from contention.
  auto q = p;
  q.rho = 1e-12;
  CHECK(mu2_lower_bound(q, 0.01) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("synthesize_gains scales both bounds by 1+margin") {
  const auto p = reference_parameters();
  const Gains g = synthesize_gains(p, 0.01);
  CHECK(g.mu1 == doctest::Approx(6.59312698721178).epsilon(1e-12));
  CHECK(g.mu2 == doctest::Approx(33.2952912854195).epsilon(1e-12));
  CHECK(validate_gains(p, g).ok());

  CHECK(validate_gains(p, synthesize_gains(p, 0.001)).ok());
  CHECK_THROWS_AS((void)synthesize_gains(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)synthesize_gains(p, -0.1), std::invalid_argument);
}

TEST_CASE("validate_gains flags each bound separately") {
  const auto p = reference_parameters();
  CHECK(validate_gains(p, reference_gains()).ok());

  // mu1 exactly at its bound is a violation (strict inequality).
  const Gains at_mu1_bound{mu1_lower_bound(p), 33.24};
  const auto r1 = validate_gains(p, at_mu1_bound);
  CHECK_FALSE(r1.ok());
  REQUIRE(r1.violations().size() == 1);
  CHECK(r1.violations()[0].find("mu1") != std::string::npos);

  const Gains at_mu2_bound{6.63, 33.15};
  const auto r2 = validate_gains(p, at_mu2_bound);
  CHECK_FALSE(r2.ok());
  REQUIRE(r2.violations().size() == 1);
  CHECK(r2.violations()[0].find("mu2") != std::string::npos);

  // Parameter violations fold into the gains report.
  auto bad = p;
  bad.rho = 1.5;
  CHECK_FALSE(validate_gains(bad, reference_gains()).ok());
}

TEST_CASE("settling_estimate reproduces the reference chain") {
  const auto est = settling_estimate(reference_parameters(), reference_gains());
  CHECK(est.r1 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(est.r2 == doctest::Approx(0.0300842358604091).epsilon(1e-12));
  CHECK(est.eta == doctest::Approx(0.193441636582431).epsilon(1e-12));
  CHECK(est.t2 == doctest::Approx(0.973511777804956).epsilon(1e-12));
  CHECK(est.t2_bound == doctest::Approx(0.984113297385673).epsilon(1e-12));

  CHECK(est.eta < 1.0 / reference_parameters().beta);
  CHECK(est.t2 <= est.t2_bound);
  CHECK(est.t2_bound <= reference_parameters().Ts);
  CHECK(est.r2 < reference_parameters().R);
  CHECK(est.r2 < est.r1);
}

TEST_CASE("settling_estimate refuses invalid gains, naming the inequality") {
  const auto p = reference_parameters();
  try {
    (void)settling_estimate(p, Gains{6.63, 6.63});  // mu2 bound violated
    FAIL("expected std::invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("mu2") != std::string::npos);
  }
}

TEST_CASE("estimate chain invariants hold over random valid pairs") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto [p, g] = random_valid_pair(rng);
    CAPTURE(p.R);
    CAPTURE(p.beta);
    CAPTURE(g.mu1);
    CAPTURE(g.mu2);
    const auto est = settling_estimate(p, g);
    CHECK(est.eta > 0.0);
    CHECK(est.eta < 1.0 / p.beta);
    CHECK(est.t2 <= est.t2_bound);
    CHECK(est.t2_bound <= p.Ts);
    CHECK(est.r2 < p.R);
    CHECK(est.r2 < est.r1);
  }
}

TEST_CASE("synthesize_gains output passes validate_gains for any margin > 0") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> margin_dist(1e-4, 2.0);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_valid_parameters(rng);
    const double margin = margin_dist(rng);
    CHECK(validate_gains(p, synthesize_gains(p, margin)).ok());
  }
}

TEST_CASE("bound monotonicity") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    auto p = random_valid_parameters(rng);

    // mu1 bound strictly decreasing in Ts.
    auto slower = p;
    slower.Ts = p.Ts * 1.5;
    CHECK(mu1_lower_bound(slower) < mu1_lower_bound(p));

    // ... and strictly increasing in delta.
    auto larger = p;
    larger.delta = p.delta * 1.5;
    CHECK(mu1_lower_bound(larger) > mu1_lower_bound(p));

    // t2_bound strictly decreasing in mu1 above N.
    const Gains g = synthesize_gains(p, 0.05);
    Gains stronger = g;
    stronger.mu1 *= 1.2;
    stronger.mu2 = (1.0 + 0.05) * mu2_lower_bound(p, stronger.mu1);
    CHECK(settling_estimate(p, stronger).t2_bound < settling_estimate(p, g).t2_bound);
  }
}
