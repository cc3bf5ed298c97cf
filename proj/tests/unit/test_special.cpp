#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracwell/special.hpp"

using namespace fracwell;

// Reference values computed with a 40-digit arbitrary-precision Gamma
// implementation before the build.
TEST_CASE("gamma_fn matches the high-precision reference grid") {
  struct Ref { double x, g; };
  const Ref refs[] = {
      {0.5, 1.772453850905516027298},  {0.7, 1.298055332647557785681},
      {0.95, 1.031453317129032196166}, {1.0, 1.0},
      {1.05, 0.9735042655627756432024}, {1.2346, 0.9097128689146565522159},
      {1.5, 0.8862269254527580136491}, {1.7, 0.9086387328532904499768},
      {2.0, 1.0},                      {2.31, 1.173765471534157245241},
      {2.5, 1.329340388179137020474},  {2.9, 1.827355080624036096874},
      {3.1, 2.197620278392477054184},  {3.49, 3.286945032647901899116},
  };
  for (const auto& r : refs) {
    CAPTURE(r.x);
    CHECK(std::abs(gamma_fn(r.x) - r.g) <= 1e-13 * r.g);
  }
}

TEST_CASE("gamma_fn agrees with std::tgamma across (0.5, 3.5)") {
  for (int i = 0; i <= 300; ++i) {
    const double x = 0.5 + 3.0 * i / 300.0;
    CAPTURE(x);
    CHECK(std::abs(gamma_fn(x) - std::tgamma(x)) <= 1e-13 * std::tgamma(x));
  }
}

TEST_CASE("beta_fn identities") {
  // B(1/2, 2) = 4/3 and B(1/2, 3/2) = pi/2.
  CHECK(beta_fn(0.5, 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(beta_fn(0.5, 1.5) == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-14));
  // Symmetry.
  CHECK(beta_fn(0.8, 1.7) == doctest::Approx(beta_fn(1.7, 0.8)).epsilon(1e-14));
}

TEST_CASE("c1_alpha exact values") {
  CHECK(c1_alpha(1.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  // Gamma(1.5) sin(pi/4) / pi, frozen from the arbitrary-precision oracle.
  CHECK(c1_alpha(0.5) == doctest::Approx(0.19947114020071633897).epsilon(1e-14));
}

TEST_CASE("c1_alpha endpoint asymptotics") {
  CHECK(std::abs(c1_alpha(0.01) - 0.005) <= 0.02 * 0.005);
  CHECK(std::abs(c1_alpha(1.99) - 0.01) <= 0.02 * 0.01);

  // The ratio to each limiting form approaches 1 on a log-spaced walk into
  // the endpoint.
  double prev_lo = std::abs(c1_alpha(0.1) / (0.1 / 2.0) - 1.0);
  double prev_hi = std::abs(c1_alpha(1.9) / (2.0 - 1.9) - 1.0);
  for (int k = 2; k <= 5; ++k) {
    const double a = 0.1 * std::pow(10.0, -(k - 1));
    const double lo = std::abs(c1_alpha(a) / (a / 2.0) - 1.0);
    CHECK(lo < prev_lo);
    prev_lo = lo;

    const double b = 2.0 - 0.1 * std::pow(10.0, -(k - 1));
    const double hi = std::abs(c1_alpha(b) / (2.0 - b) - 1.0);
    CHECK(hi < prev_hi);
    prev_hi = hi;
  }
  CHECK(prev_lo < 1e-4);
  CHECK(prev_hi < 1e-4);
}

TEST_CASE("c1_alpha is positive on (0, 2) and rejects the outside") {
  for (int i = 1; i < 40; ++i) {
    const double a = 2.0 * i / 40.0;
    CHECK(c1_alpha(a) > 0.0);
  }
  CHECK_THROWS_AS(c1_alpha(0.0), std::domain_error);
  CHECK_THROWS_AS(c1_alpha(2.0), std::domain_error);
  CHECK_THROWS_AS(c1_alpha(-0.3), std::domain_error);
  CHECK_THROWS_AS(c1_alpha(2.7), std::domain_error);
}
