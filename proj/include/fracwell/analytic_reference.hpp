#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "fracwell/special.hpp"

namespace fracwell {

struct EigenPair {
  double phi = 0.0;
  double mu = 0.0;
};

/// Exact eigenpair of the standard (alpha = 2) linear problem in the well:
///   phi_s(x) = sqrt(1/L) sin[(s+1) pi (1 + x/L) / 2],
///   mu_s     = [(s+1) pi / (2L)]^2.
inline EigenPair standard_eigenpair(int s, double L, double x) {
  if (s < 0) throw std::invalid_argument("standard_eigenpair: s must be nonnegative");
  if (!(L > 0.0)) throw std::invalid_argument("standard_eigenpair: L must be positive");
  if (std::abs(x) > L) throw std::invalid_argument("standard_eigenpair: |x| exceeds L");
  EigenPair p;
  const double k = (s + 1) * std::numbers::pi / 2.0;
  p.phi = std::sqrt(1.0 / L) * std::sin(k * (1.0 + x / L));
  p.mu = (k / L) * (k / L);
  return p;
}

/// Leading-order eigenvalue in the strongly repulsive regime,
///   mu_s ~ [L beta / 2 + (s+2) sqrt(beta L + (s+2)^2) + (s+2)^2] / L^2.
/// Intended for beta >> 1 (roughly beta >= 10).
inline double thomas_fermi_mu(int s, double beta, double L) {
  if (s < 0) throw std::invalid_argument("thomas_fermi_mu: s must be nonnegative");
  if (!(L > 0.0)) throw std::invalid_argument("thomas_fermi_mu: L must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("thomas_fermi_mu: beta must be positive");
  const double sp2 = static_cast<double>(s + 2);
  return (L * beta / 2.0 + sp2 * std::sqrt(beta * L + sp2 * sp2) + sp2 * sp2) / (L * L);
}

/// Thomas-Fermi profile: the tanh-sum closed form with c_s = 1 for even s
/// and 0 for odd s, evaluated together with its eigenvalue.
inline EigenPair thomas_fermi(int s, double beta, double L, double x) {
  EigenPair p;
  p.mu = thomas_fermi_mu(s, beta, L);
  const double q = std::sqrt(2.0 * p.mu) * L / 2.0;
  const double u = 1.0 + x / L;
  double acc = 0.0;
  for (int r = 0; r <= (s + 1) / 2; ++r)
    acc += std::tanh(q * (u - 4.0 * r / static_cast<double>(s + 1)));
  for (int r = 0; r <= s / 2; ++r)
    acc += std::tanh(q * ((4.0 * r + 2.0) / static_cast<double>(s + 1) - u));
  if (s % 2 == 0) acc -= std::tanh(q);
  p.phi = std::sqrt(p.mu / beta) * acc;
  return p;
}

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Eigenvalue bracket valid for every state index on an interval of length
/// `length`: (1/2) [(s+1) pi / length]^alpha <= mu_s <= [(s+1) pi / length]^alpha.
inline Bounds chen_bounds(int s, double alpha, double length) {
  if (s < 0) throw std::invalid_argument("chen_bounds: s must be nonnegative");
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("chen_bounds: alpha must lie in (0, 2]");
  if (!(length > 0.0)) throw std::invalid_argument("chen_bounds: length must be positive");
  const double top = std::pow((s + 1) * std::numbers::pi / length, alpha);
  return {0.5 * top, top};
}

/// Sharper ground-state bracket:
///   p(alpha) <= mu_0 <= p(alpha) B(1/2, 1 + alpha/2) / B(1/2, 1 + alpha),
///   p(alpha) = 2^alpha Gamma(1 + alpha/2) Gamma((1 + alpha)/2) / Gamma(1/2).
inline Bounds banuelos_bounds(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("banuelos_bounds: alpha must lie in (0, 2]");
  const double p = std::pow(2.0, alpha) * gamma_fn(1.0 + alpha / 2.0) *
                   gamma_fn((1.0 + alpha) / 2.0) / gamma_fn(0.5);
  const double ratio = beta_fn(0.5, 1.0 + alpha / 2.0) / beta_fn(0.5, 1.0 + alpha);
  return {p, p * ratio};
}

/// Leading asymptotic eigenvalue on (-1, 1):
///   mu_s ~ [(s+1) pi / 2 - (2 - alpha) pi / 8]^alpha.
/// Exact at alpha = 2, where it reduces to [(s+1) pi / 2]^2.
inline double kwasnicki_mu(int s, double alpha) {
  if (s < 0 || s > 1) throw std::invalid_argument("kwasnicki_mu: s must be 0 or 1");
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("kwasnicki_mu: alpha must lie in (0, 2]");
  const double base =
      (s + 1) * std::numbers::pi / 2.0 - (2.0 - alpha) * std::numbers::pi / 8.0;
  return std::pow(base, alpha);
}

/// Exact position variance of the standard eigenstates,
///   Var_s = (L^2/3) (1 - 6 / (pi^2 (s+1)^2)) -> L^2/3 as s grows.
inline double standard_variance(int s, double L) {
  if (s < 0) throw std::invalid_argument("standard_variance: s must be nonnegative");
  if (!(L > 0.0)) throw std::invalid_argument("standard_variance: L must be positive");
  const double sp1 = static_cast<double>(s + 1);
  return L * L / 3.0 *
         (1.0 - 6.0 / (std::numbers::pi * std::numbers::pi * sp1 * sp1));
}

/// One comparison row: the general bracket, the ground-state bracket when it
/// applies, and the asymptotic value.
struct BoundsRow {
  double alpha = 0.0;
  int s = 0;
  double chen_lower = 0.0;
  double chen_upper = 0.0;
  std::optional<double> banuelos_lower;
  std::optional<double> banuelos_upper;
  double kwasnicki = 0.0;
};

inline BoundsRow make_bounds_row(int s, double alpha, double L = 1.0) {
  BoundsRow row;
  row.alpha = alpha;
  row.s = s;
  const Bounds chen = chen_bounds(s, alpha, 2.0 * L);
  row.chen_lower = chen.lower;
  row.chen_upper = chen.upper;
  if (s == 0) {
    const Bounds ban = banuelos_bounds(alpha);
    row.banuelos_lower = ban.lower;
    row.banuelos_upper = ban.upper;
  }
  row.kwasnicki = kwasnicki_mu(s, alpha);
  return row;
}

}  // namespace fracwell
