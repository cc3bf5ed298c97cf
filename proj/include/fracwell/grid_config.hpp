#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracwell/special.hpp"

namespace fracwell {

enum class StateKind { Ground, FirstExcited };

inline int state_index(StateKind s) { return s == StateKind::Ground ? 0 : 1; }

inline const char* to_string(StateKind s) {
  return s == StateKind::Ground ? "ground" : "first";
}

inline StateKind parse_state(const std::string& name) {
  if (name == "ground") return StateKind::Ground;
  if (name == "first") return StateKind::FirstExcited;
  throw std::invalid_argument("unknown state '" + name + "' (expected ground|first)");
}

/// Physical problem: well half-width L, fractional order alpha in (0, 2),
/// repulsive interaction strength beta >= 0, and which stationary state the
/// flow should settle into.
struct WellConfig {
  double L = 1.0;
  double alpha = 1.0;
  double beta = 0.0;
  StateKind state = StateKind::Ground;

  bool operator==(const WellConfig&) const = default;
};

inline void validate(const WellConfig& cfg) {
  if (!(cfg.L > 0.0)) throw std::invalid_argument("WellConfig: L must be positive");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 2.0))
    throw std::invalid_argument("WellConfig: alpha must lie in (0, 2)");
  if (!(cfg.beta >= 0.0)) throw std::invalid_argument("WellConfig: beta must be nonnegative");
}

/// Numerical parameters. Everything except the time controls is derived:
/// h = 2L/J, the quadrature truncation length A = 2L (so M = J), and the
/// splitting exponents satisfy sigma + gamma + alpha = 2.
struct Discretization {
  int J = 0;
  double h = 0.0;
  int M = 0;
  double A = 0.0;
  double gamma = 0.0;
  double sigma = 0.0;
  double dt = 0.0;
  double eps = 0.0;
  long max_iters = 0;

  bool operator==(const Discretization&) const = default;
};

inline Discretization make_discretization(const WellConfig& cfg, int J, double dt, double eps,
                                          long max_iters = 500000,
                                          std::optional<double> gamma_override = std::nullopt) {
  validate(cfg);
  if (J < 8 || J % 2 != 0)
    throw std::invalid_argument("Discretization: J must be an even integer >= 8");
  if (!(dt > 0.0)) throw std::invalid_argument("Discretization: dt must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("Discretization: eps must be positive");
  if (max_iters <= 0) throw std::invalid_argument("Discretization: max_iters must be positive");

  const double gamma = gamma_override.value_or(1.0 - cfg.alpha / 2.0);
  if (!(gamma > 0.0 && gamma < 2.0 - cfg.alpha))
    throw std::invalid_argument(
        "Discretization: gamma must lie in (0, 2 - alpha); outside that range the "
        "quadrature weight integral diverges");

  Discretization d;
  d.J = J;
  d.h = 2.0 * cfg.L / static_cast<double>(J);
  d.M = J;  // A = 2L implies m = 1
  d.A = 2.0 * cfg.L;
  d.gamma = gamma;
  d.sigma = 2.0 - cfg.alpha - gamma;
  d.dt = dt;
  d.eps = eps;
  d.max_iters = max_iters;
  return d;
}

/// Interior grid x_j = -L + j h, j = 1..J-1. Points are built as
/// (j - J/2) h so the lattice is symmetric about 0 to the last bit and the
/// center point x_{J/2} = 0 exists exactly (J is even). The endpoints +-L are
/// excluded: the wave function vanishes there and on all of R \ (-L, L).
struct Grid {
  std::vector<double> points;
  double h = 0.0;
  double L = 0.0;

  static Grid interior(const WellConfig& cfg, const Discretization& disc) {
    Grid g;
    g.h = disc.h;
    g.L = cfg.L;
    g.points.resize(static_cast<std::size_t>(disc.J) - 1);
    const int half = disc.J / 2;
    for (int j = 1; j < disc.J; ++j)
      g.points[static_cast<std::size_t>(j) - 1] = static_cast<double>(j - half) * disc.h;
    return g;
  }

  std::size_t size() const { return points.size(); }
};

}  // namespace fracwell
