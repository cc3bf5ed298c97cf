#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "fracwell/fractional_operator.hpp"
#include "fracwell/gradient_flow.hpp"
#include "fracwell/grid_config.hpp"

namespace fracwell {

struct MuDecomposition {
  double mu = 0.0;
  double kinetic = 0.0;
  double interaction = 0.0;
};

/// Chemical potential of a unit-mass state, split into kinetic and
/// interaction parts:
///   mu_kin = -h Phi.(D Phi)     (D approximates -(-Laplace)^{alpha/2})
///   mu_int = beta h sum phi^4
/// so mu = mu_kin + mu_int holds as an identity of the returned values.
inline MuDecomposition chemical_potential(const FractionalOperator& op, const StateVector& phi,
                                          double beta) {
  if (phi.size() != op.size())
    throw std::invalid_argument("chemical_potential: length mismatch");
  const std::vector<double> dv = op.matvec_fast(phi.values);
  double quad = 0.0, quart = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    quad += phi.values[j] * dv[j];
    const double v2 = phi.values[j] * phi.values[j];
    quart += v2 * v2;
  }
  MuDecomposition m;
  m.kinetic = -phi.h * quad;
  m.interaction = beta * phi.h * quart;
  m.mu = m.kinetic + m.interaction;
  return m;
}

/// Total energy E = mu_kin + (beta/2) h sum phi^4 (the well potential is zero
/// inside the domain). Equals mu - mu_int / 2.
inline double total_energy(const FractionalOperator& op, const StateVector& phi, double beta) {
  const MuDecomposition m = chemical_potential(op, phi, beta);
  return m.kinetic + 0.5 * m.interaction;
}

/// Expected position and variance, h-weighted sums over interior points.
inline std::pair<double, double> position_moments(const StateVector& phi, const Grid& grid) {
  if (phi.size() != grid.size())
    throw std::invalid_argument("position_moments: length mismatch");
  double mean = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j)
    mean += grid.points[j] * phi.values[j] * phi.values[j];
  mean *= phi.h;
  double var = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double d = grid.points[j] - mean;
    var += d * d * phi.values[j] * phi.values[j];
  }
  var *= phi.h;
  return {mean, var};
}

struct DensityPeak {
  double x_c = 0.0;
  double rho_max = 0.0;
  /// The maximum sits on a plateau wider than 3 grid cells, so its grid
  /// location is not meaningful at this resolution.
  bool ambiguous = false;
};

/// Location and value of the density maximum of a first-excited state,
/// restricted to x > 0. Reported as a grid point, no sub-grid interpolation.
inline DensityPeak density_peak(const StateVector& phi, const Grid& grid) {
  if (phi.size() != grid.size()) throw std::invalid_argument("density_peak: length mismatch");
  DensityPeak peak;
  std::size_t best = 0;
  bool found = false;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(grid.points[j] > 0.0)) continue;
    const double rho = phi.values[j] * phi.values[j];
    if (!found || rho > peak.rho_max) {
      best = j;
      peak.rho_max = rho;
      peak.x_c = grid.points[j];
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("density_peak: grid has no points with x > 0");

  std::size_t run = 1;
  const double floor = peak.rho_max * (1.0 - 1e-12);
  for (std::size_t j = best; j-- > 0 && grid.points[j] > 0.0;) {
    if (phi.values[j] * phi.values[j] >= floor) ++run;
    else break;
  }
  for (std::size_t j = best + 1; j < grid.size(); ++j) {
    if (phi.values[j] * phi.values[j] >= floor) ++run;
    else break;
  }
  peak.ambiguous = run > 3;
  return peak;
}

/// Boundary-layer width of a ground state: w = L - |xbar| where |phi'| first
/// drops through eta while scanning inward from the left wall. phi' uses
/// central differences (one-sided at the first interior point). No crossing
/// means the state has no layer at this threshold, reported as nullopt.
inline std::optional<double> layer_width(const StateVector& phi, const Grid& grid,
                                         double eta = std::numbers::sqrt2 / 2.0) {
  if (phi.size() != grid.size()) throw std::invalid_argument("layer_width: length mismatch");
  if (!(eta > 0.0)) throw std::invalid_argument("layer_width: eta must be positive");
  const std::size_t n = phi.size();
  bool above = false;
  for (std::size_t j = 0; j <= n / 2; ++j) {
    double deriv;
    if (j == 0) deriv = (phi.values[1] - phi.values[0]) / phi.h;
    else deriv = (phi.values[j + 1] - phi.values[j - 1]) / (2.0 * phi.h);
    const double mag = std::abs(deriv);
    if (mag > eta) {
      above = true;
    } else if (above) {
      return grid.L - std::abs(grid.points[j]);
    }
  }
  return std::nullopt;
}

/// Residual of the discrete eigen-relation mu phi = -D phi + beta phi^3 in
/// the max norm; small for converged flows (<= 10 eps in practice).
inline double eigen_residual(const FractionalOperator& op, const StateVector& phi, double beta,
                             double mu) {
  const std::vector<double> dv = op.matvec_fast(phi.values);
  double r = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double v = phi.values[j];
    r = std::max(r, std::abs(-dv[j] + beta * v * v * v - mu * v));
  }
  return r;
}

struct Observables {
  double mu = 0.0;
  double mu_kin = 0.0;
  double mu_int = 0.0;
  double energy = 0.0;
  double expected_x = 0.0;
  double variance_x = 0.0;
  std::optional<double> x_c;        // first excited only
  std::optional<double> rho_max;    // first excited only
  bool peak_ambiguous = false;
  std::optional<double> layer_width;  // ground only; nullopt when no layer

  bool operator==(const Observables&) const = default;
};

inline Observables compute_observables(const FractionalOperator& op, const StateVector& phi,
                                       const Grid& grid, const WellConfig& cfg) {
  Observables obs;
  const MuDecomposition m = chemical_potential(op, phi, cfg.beta);
  obs.mu = m.mu;
  obs.mu_kin = m.kinetic;
  obs.mu_int = m.interaction;
  obs.energy = m.kinetic + 0.5 * m.interaction;
  std::tie(obs.expected_x, obs.variance_x) = position_moments(phi, grid);
  if (cfg.state == StateKind::FirstExcited) {
    const DensityPeak peak = density_peak(phi, grid);
    obs.x_c = peak.x_c;
    obs.rho_max = peak.rho_max;
    obs.peak_ambiguous = peak.ambiguous;
  } else {
    obs.layer_width = layer_width(phi, grid);
  }
  return obs;
}

}  // namespace fracwell
