#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fracwell/grid_config.hpp"

using namespace fracwell;

TEST_CASE("make_discretization derives the splitting parameters") {
  WellConfig cfg{1.0, 1.0, 0.0, StateKind::Ground};
  const auto d = make_discretization(cfg, 16, 0.005, 1e-5);
  CHECK(d.gamma == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.sigma == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.h == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(d.M == 16);
  CHECK(d.A == doctest::Approx(2.0).epsilon(1e-15));

  cfg.alpha = 0.2;
  const auto d2 = make_discretization(cfg, 8, 0.005, 1e-5);
  CHECK(d2.gamma == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(d2.sigma == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("make_discretization rejects bad inputs") {
  WellConfig cfg{1.0, 1.5, 0.0, StateKind::Ground};
  CHECK_THROWS_AS(make_discretization(cfg, 16, 0.005, 1e-5, 1000, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(make_discretization(cfg, 16, 0.005, 1e-5, 1000, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_discretization(cfg, 15, 0.005, 1e-5), std::invalid_argument);
  CHECK_THROWS_AS(make_discretization(cfg, 6, 0.005, 1e-5), std::invalid_argument);
  CHECK_THROWS_AS(make_discretization(cfg, 16, 0.0, 1e-5), std::invalid_argument);
  CHECK_THROWS_AS(make_discretization(cfg, 16, 0.005, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_discretization(cfg, 16, 0.005, 1e-5, 0), std::invalid_argument);
  // A gamma strictly inside (0, 2 - alpha) is accepted.
  CHECK_NOTHROW(make_discretization(cfg, 16, 0.005, 1e-5, 1000, 0.3));
}

TEST_CASE("WellConfig validation") {
  CHECK_THROWS_AS(validate(WellConfig{1.0, 3.0, 0.0, StateKind::Ground}), std::invalid_argument);
  CHECK_THROWS_AS(validate(WellConfig{1.0, 2.0, 0.0, StateKind::Ground}), std::invalid_argument);
  CHECK_THROWS_AS(validate(WellConfig{1.0, 1.0, -1.0, StateKind::Ground}), std::invalid_argument);
  CHECK_THROWS_AS(validate(WellConfig{0.0, 1.0, 0.0, StateKind::Ground}), std::invalid_argument);
  CHECK_NOTHROW(validate(WellConfig{2.5, 0.05, 7.0, StateKind::FirstExcited}));
}

TEST_CASE("derived fields satisfy sigma + gamma + alpha = 2") {
  for (double alpha : {0.1, 0.37, 0.9, 1.3, 1.99}) {
    WellConfig cfg{1.0, alpha, 0.0, StateKind::Ground};
    const auto d = make_discretization(cfg, 32, 0.01, 1e-6);
    CHECK(d.sigma + d.gamma + alpha == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d.sigma > 0.0);
    CHECK(d.sigma < 2.0);
  }
}

TEST_CASE("interior grid is symmetric with an exact center zero") {
  for (int J : {8, 64, 2048}) {
    WellConfig cfg{1.0, 1.0, 0.0, StateKind::Ground};
    const auto d = make_discretization(cfg, J, 0.005, 1e-5);
    const Grid g = Grid::interior(cfg, d);
    REQUIRE(g.size() == static_cast<std::size_t>(J - 1));
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(g.points[j] + g.points[g.size() - 1 - j] == 0.0);
      if (j > 0) CHECK(g.points[j] > g.points[j - 1]);
    }
    CHECK(g.points[static_cast<std::size_t>(J / 2) - 1] == 0.0);
    // Endpoints excluded: first point sits one mesh width inside the wall.
    CHECK(g.points.front() == doctest::Approx(-cfg.L + d.h).epsilon(1e-14));
    CHECK(std::abs(g.points.front()) < cfg.L);
  }
}

TEST_CASE("grid respects a nonunit half-width") {
  WellConfig cfg{2.5, 0.8, 0.0, StateKind::Ground};
  const auto d = make_discretization(cfg, 10, 0.005, 1e-5);
  CHECK(d.h == doctest::Approx(0.5).epsilon(1e-15));
  const Grid g = Grid::interior(cfg, d);
  CHECK(g.L == 2.5);
  CHECK(g.points.front() == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(g.points.back() == doctest::Approx(2.0).epsilon(1e-14));
}
