#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "fracwell/fractional_operator.hpp"
#include "fracwell/gradient_flow.hpp"
#include "fracwell/grid_config.hpp"
#include "fracwell/observables.hpp"
#include "fracwell/run_record.hpp"

namespace fracwell {

struct RunOutcome {
  RunRecord record;
  StateVector state;
  Grid grid;
};

/// One complete solve: flow, observables, reference columns. An iteration-cap
/// hit does not throw here; the record comes back with converged = false so
/// callers can emit a flagged partial result.
inline RunOutcome run_one_full(const WellConfig& cfg, const Discretization& disc,
                               const FlowOptions& opts = {}) {
  RunOutcome out;
  out.grid = Grid::interior(cfg, disc);
  try {
    auto [state, report] = solve_flow(cfg, disc, opts);
    out.state = std::move(state);
    out.record.flow = report;
  } catch (const NonConvergenceError& e) {
    out.state = e.last_state();
    out.record.flow = e.report();
  }
  const auto op = FractionalOperator::assemble(cfg, disc);
  out.record.config = cfg;
  out.record.disc = disc;
  out.record.observables = compute_observables(op, out.state, out.grid, cfg);
  out.record.reference = make_reference_values(cfg);
  out.record.timestamp = iso8601_utc_now();
  out.record.version = kToolVersion;
  return out;
}

inline RunRecord run_one(const WellConfig& cfg, const Discretization& disc,
                         const FlowOptions& opts = {}) {
  return run_one_full(cfg, disc, opts).record;
}

struct SweepPoint {
  double alpha = 1.0;
  double beta = 0.0;
  StateKind state = StateKind::Ground;
};

struct SweepParams {
  double L = 1.0;
  int J = 2048;
  double dt = 0.005;
  double eps = 1e-5;
  long max_iters = 500000;
  std::optional<double> gamma_override;
  std::optional<SolveMode> solver_mode;
};

/// Runs every point and returns records in input order regardless of how the
/// worker pool schedules them, so repeated sweeps serialize identically.
inline std::vector<RunRecord> run_sweep(const std::vector<SweepPoint>& points,
                                        const SweepParams& params, int jobs) {
  std::vector<RunRecord> records(points.size());
  if (points.empty()) return records;
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(points.size())));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(points.size());
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      try {
        WellConfig cfg{params.L, points[i].alpha, points[i].beta, points[i].state};
        const Discretization disc = make_discretization(cfg, params.J, params.dt, params.eps,
                                                        params.max_iters, params.gamma_override);
        FlowOptions opts;
        opts.solver_mode = params.solver_mode;
        records[i] = run_one(cfg, disc, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  return records;
}

struct DemoRow {
  double x = 0.0;
  double u = 0.0;
  double lu = 0.0;  // discrete (-Laplace)^{alpha/2} u
};

/// The operator-demonstration dataset: u = sin(pi (1 + x/L) / 2) and its
/// discrete fractional Laplacian over the interior grid.
inline std::vector<DemoRow> operator_demo_rows(double alpha, int J, double L = 1.0) {
  WellConfig cfg{L, alpha, 0.0, StateKind::Ground};
  const Discretization disc = make_discretization(cfg, J, 0.005, 1e-5);
  const Grid grid = Grid::interior(cfg, disc);
  std::vector<double> u(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    u[j] = std::sin(std::numbers::pi / 2.0 * (1.0 + grid.points[j] / L));
  const std::vector<double> lu = apply_to_samples(cfg, disc, u);
  std::vector<DemoRow> rows(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) rows[j] = {grid.points[j], u[j], lu[j]};
  return rows;
}

}  // namespace fracwell
