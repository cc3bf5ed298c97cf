#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "fracwell/analytic_reference.hpp"
#include "fracwell/gradient_flow.hpp"
#include "fracwell/grid_config.hpp"
#include "fracwell/run_record.hpp"

namespace fracwell {

/// Summary columns carry 6 significant digits; full precision lives in the
/// JSON records.
inline std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string csv_opt(const std::optional<double>& v) {
  return v ? csv_number(*v) : std::string{};
}

inline constexpr const char* kSweepCsvHeader =
    "alpha,beta,state,J,dt,eps,mu,mu_kin,mu_int,energy,expected_x,variance_x,"
    "x_c,rho_max,layer_width,iterations,residual,converged";

inline std::string sweep_csv_row(const RunRecord& r) {
  std::string row;
  row += csv_number(r.config.alpha);
  row += ',';
  row += csv_number(r.config.beta);
  row += ',';
  row += to_string(r.config.state);
  row += ',';
  row += std::to_string(r.disc.J);
  row += ',';
  row += csv_number(r.disc.dt);
  row += ',';
  row += csv_number(r.disc.eps);
  row += ',';
  row += csv_number(r.observables.mu);
  row += ',';
  row += csv_number(r.observables.mu_kin);
  row += ',';
  row += csv_number(r.observables.mu_int);
  row += ',';
  row += csv_number(r.observables.energy);
  row += ',';
  row += csv_number(r.observables.expected_x);
  row += ',';
  row += csv_number(r.observables.variance_x);
  row += ',';
  row += csv_opt(r.observables.x_c);
  row += ',';
  row += csv_opt(r.observables.rho_max);
  row += ',';
  row += csv_opt(r.observables.layer_width);
  row += ',';
  row += std::to_string(r.flow.iterations);
  row += ',';
  row += csv_number(r.flow.final_residual);
  row += ',';
  row += r.flow.converged ? "true" : "false";
  return row;
}

inline constexpr const char* kBoundsCsvHeader =
    "alpha,s,chen_lower,chen_upper,banuelos_lower,banuelos_upper,kwasnicki";

inline std::string bounds_csv_row(const BoundsRow& b) {
  std::string row;
  row += csv_number(b.alpha);
  row += ',';
  row += std::to_string(b.s);
  row += ',';
  row += csv_number(b.chen_lower);
  row += ',';
  row += csv_number(b.chen_upper);
  row += ',';
  row += csv_opt(b.banuelos_lower);
  row += ',';
  row += csv_opt(b.banuelos_upper);
  row += ',';
  row += csv_number(b.kwasnicki);
  return row;
}

/// Wave-function dump, one `x,phi` row per interior grid point.
inline void write_state_csv(std::ostream& os, const Grid& grid, const StateVector& phi) {
  os << "x,phi\n";
  char buf[64];
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n", grid.points[j], phi.values[j]);
    os << buf;
  }
}

}  // namespace fracwell
