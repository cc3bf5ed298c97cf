// Command-line driver: solve one stationary state, sweep parameter grids,
// print analytic eigenvalue bounds, or dump the operator demonstration data.
// Exit codes: 0 success, 1 usage or domain error, 2 non-convergence.

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fracwell/fracwell.hpp"

namespace {

struct CommonArgs {
  double alpha = 1.0;
  double beta = 0.0;
  std::string state = "ground";
  double L = 1.0;
  int J = 2048;
  double dt = 0.005;
  double eps = 1e-5;
  long max_iters = 500000;
  double gamma = -1.0;  // < 0 means the default 1 - alpha/2
  std::string out;
  std::string dump_state;
  int jobs = 0;  // 0 means hardware concurrency
};

void add_numeric_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--L", a.L, "Half-width of the well");
  cmd->add_option("--J", a.J, "Interior resolution (even, >= 8)");
  cmd->add_option("--dt", a.dt, "Time step");
  cmd->add_option("--eps", a.eps, "Stopping tolerance");
  cmd->add_option("--max-iters", a.max_iters, "Iteration cap");
  cmd->add_option("--gamma", a.gamma, "Splitting exponent (default 1 - alpha/2)");
}

std::optional<double> gamma_opt(const CommonArgs& a) {
  if (a.gamma < 0.0) return std::nullopt;
  return a.gamma;
}

int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Stream to --out or stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_solve(const CommonArgs& a) {
  fracwell::WellConfig cfg{a.L, a.alpha, a.beta, fracwell::parse_state(a.state)};
  const auto disc =
      fracwell::make_discretization(cfg, a.J, a.dt, a.eps, a.max_iters, gamma_opt(a));
  const auto outcome = fracwell::run_one_full(cfg, disc);

  nlohmann::json j = outcome.record;
  OutputTarget out(a.out);
  out.stream() << j.dump(2) << "\n";

  if (!a.dump_state.empty()) {
    std::ofstream f(a.dump_state);
    if (!f) throw std::runtime_error("cannot open state dump file '" + a.dump_state + "'");
    fracwell::write_state_csv(f, outcome.grid, outcome.state);
  }
  if (!outcome.record.flow.converged) {
    std::cerr << "fracwell: flow did not converge within " << a.max_iters
              << " iterations (last residual " << outcome.record.flow.final_residual << ")\n";
    return 2;
  }
  return 0;
}

int cmd_sweep(const CommonArgs& a, std::vector<double> alphas,
              const std::vector<double>& betas, bool have_single_alpha) {
  if (alphas.empty() && betas.empty())
    throw CLI::ValidationError("sweep", "supply --alpha-list and/or --beta-list");
  if (alphas.empty()) {
    if (!have_single_alpha)
      throw CLI::ValidationError("sweep", "a beta-only sweep needs --alpha");
    alphas = {a.alpha};
  }

  std::vector<fracwell::StateKind> states;
  if (a.state == "both") {
    states = {fracwell::StateKind::Ground, fracwell::StateKind::FirstExcited};
  } else {
    states = {fracwell::parse_state(a.state)};
  }
  const std::vector<double> beta_grid = betas.empty() ? std::vector<double>{a.beta} : betas;

  std::vector<fracwell::SweepPoint> points;
  for (double alpha : alphas)
    for (double beta : beta_grid)
      for (auto st : states) points.push_back({alpha, beta, st});

  fracwell::SweepParams params;
  params.L = a.L;
  params.J = a.J;
  params.dt = a.dt;
  params.eps = a.eps;
  params.max_iters = a.max_iters;
  params.gamma_override = gamma_opt(a);

  const auto records = fracwell::run_sweep(points, params, effective_jobs(a.jobs));

  OutputTarget out(a.out);
  out.stream() << fracwell::kSweepCsvHeader << "\n";
  bool all_converged = true;
  for (const auto& r : records) {
    out.stream() << fracwell::sweep_csv_row(r) << "\n";
    all_converged = all_converged && r.flow.converged;
  }
  return all_converged ? 0 : 2;
}

int cmd_bounds(const CommonArgs& a, const std::vector<double>& alphas, int s) {
  if (alphas.empty()) throw CLI::ValidationError("bounds", "--alpha-list must not be empty");
  if (s != 0 && s != 1) throw CLI::ValidationError("bounds", "--s must be 0 or 1");
  OutputTarget out(a.out);
  out.stream() << fracwell::kBoundsCsvHeader << "\n";
  for (double alpha : alphas)
    out.stream() << fracwell::bounds_csv_row(fracwell::make_bounds_row(s, alpha, a.L)) << "\n";
  return 0;
}

int cmd_operator_demo(const CommonArgs& a, const std::string& dump_weights) {
  const auto rows = fracwell::operator_demo_rows(a.alpha, a.J, a.L);
  OutputTarget out(a.out);
  out.stream() << "x,u,Lu\n";
  char buf[96];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g\n", row.x, row.u, row.lu);
    out.stream() << buf;
  }
  if (!dump_weights.empty()) {
    fracwell::WellConfig cfg{a.L, a.alpha, 0.0, fracwell::StateKind::Ground};
    const auto disc = fracwell::make_discretization(cfg, a.J, a.dt, a.eps);
    const auto op = fracwell::FractionalOperator::assemble(cfg, disc);
    std::ofstream f(dump_weights);
    if (!f) throw std::runtime_error("cannot open weights file '" + dump_weights + "'");
    op.dump_weights_csv(f);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground and first excited states of the fractional Schrodinger equation "
               "in an infinite potential well"};
  app.require_subcommand(1);

  CommonArgs a;
  std::vector<double> alpha_list;
  std::vector<double> beta_list;
  int bounds_s = 0;
  std::string dump_weights;

  auto* solve = app.add_subcommand("solve", "Compute one stationary state");
  solve->add_option("--alpha", a.alpha, "Fractional order in (0, 2)")->required();
  solve->add_option("--beta", a.beta, "Interaction strength (>= 0)");
  solve->add_option("--state", a.state, "ground|first")
      ->check(CLI::IsMember({"ground", "first"}));
  add_numeric_flags(solve, a);
  solve->add_option("--out", a.out, "Write the JSON record here instead of stdout");
  solve->add_option("--dump-state", a.dump_state, "Write x,phi samples to this CSV");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid, one CSV row per point");
  sweep->add_option("--alpha-list", alpha_list, "Comma-separated alpha grid")->delimiter(',');
  sweep->add_option("--beta-list", beta_list, "Comma-separated beta grid")->delimiter(',');
  auto* sweep_alpha = sweep->add_option("--alpha", a.alpha, "Single alpha for beta-only sweeps");
  sweep->add_option("--beta", a.beta, "Single beta when no list is given");
  sweep->add_option("--state", a.state, "ground|first|both")
      ->check(CLI::IsMember({"ground", "first", "both"}));
  add_numeric_flags(sweep, a);
  sweep->add_option("--jobs", a.jobs, "Worker pool size (default: hardware concurrency)");
  sweep->add_option("--out", a.out, "Write the CSV here instead of stdout");

  auto* bounds = app.add_subcommand("bounds", "Analytic eigenvalue bounds and asymptotics");
  bounds->add_option("--alpha-list", alpha_list, "Comma-separated alpha grid")
      ->required()
      ->delimiter(',');
  bounds->add_option("--s", bounds_s, "State index (0 or 1)");
  bounds->add_option("--L", a.L, "Half-width of the well");
  bounds->add_option("--out", a.out, "Write the CSV here instead of stdout");

  auto* demo = app.add_subcommand("operator-demo",
                                  "Apply the discrete fractional Laplacian to the standard "
                                  "ground-state sine (x,u,Lu columns)");
  demo->add_option("--alpha", a.alpha, "Fractional order in (0, 2)")->required();
  demo->add_option("--J", a.J, "Interior resolution (even, >= 8)");
  demo->add_option("--L", a.L, "Half-width of the well");
  demo->add_option("--dump-weights", dump_weights, "Also dump the lag,weight table here");
  demo->add_option("--out", a.out, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(a);
    if (sweep->parsed()) return cmd_sweep(a, alpha_list, beta_list, sweep_alpha->count() > 0);
    if (bounds->parsed()) return cmd_bounds(a, alpha_list, bounds_s);
    if (demo->parsed()) return cmd_operator_demo(a, dump_weights);
  } catch (const std::exception& e) {
    std::cerr << "fracwell: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
