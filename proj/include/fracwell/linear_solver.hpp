#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fracwell/fractional_operator.hpp"

namespace fracwell {

enum class SolveMode { DirectFactorization, IterativeToeplitz };

namespace detail {

/// Residual rhs - (I - dt D) x with the Toeplitz multiply accumulated in
/// long double, written to `out`; returns its max norm. O(J^2) — only used
/// when ||D|| is large enough (alpha near 2) that the double-precision fast
/// multiply cannot resolve the residual tolerance.
inline double accurate_residual(const FractionalOperator& op, double dt,
                                std::span<const double> x, std::span<const double> rhs,
                                std::vector<double>& out) {
  const std::size_t n = op.size();
  const long double d = op.diag();
  const auto t = op.offdiag();
  out.resize(n);
  double rinf = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    long double acc = d * static_cast<long double>(x[j]);
    for (std::size_t k = 0; k < j; ++k)
      acc += static_cast<long double>(t[j - k - 1]) * x[k];
    for (std::size_t k = j + 1; k < n; ++k)
      acc += static_cast<long double>(t[k - j - 1]) * x[k];
    const long double r = static_cast<long double>(rhs[j]) - x[j] +
                          static_cast<long double>(dt) * acc;
    out[j] = static_cast<double>(r);
    rinf = std::max(rinf, std::abs(out[j]));
  }
  return rinf;
}

}  // namespace detail

/// The system matrix I - dt D is not symmetric positive definite, or the
/// conjugate-gradient loop hit its iteration cap. Either way the assembled
/// operator violated its sign structure, so this is a bug signal, not a
/// recoverable condition.
class SolverBreakdownError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double residual_tol = 1e-12;  // max-norm, relative to the right-hand side
  int max_inner = 20000;        // conjugate-gradient iteration cap
};

/// Reusable solver for (I - dt D) x = b. The matrix is constant across the
/// whole gradient flow, so the direct mode factors it once (packed Cholesky)
/// and replays triangular solves; the iterative mode runs conjugate
/// gradients with the FFT Toeplitz multiply and suits J beyond the dense
/// memory budget. Solves are const and safe to call concurrently.
class SolverPlan {
 public:
  using Options = SolverOptions;

  static SolverPlan build(const FractionalOperator& op, double dt,
                          std::optional<SolveMode> mode = std::nullopt,
                          Options opts = Options()) {
    SolverPlan plan(op, dt, opts);
    plan.mode_ = mode.value_or(op.size() <= 2047 ? SolveMode::DirectFactorization
                                                 : SolveMode::IterativeToeplitz);
    if (plan.mode_ == SolveMode::DirectFactorization) plan.factorize();
    return plan;
  }

  SolveMode mode() const { return mode_; }
  double dt() const { return dt_; }
  const Options& options() const { return opts_; }
  const FractionalOperator& op() const { return op_; }

  /// Row-sum norm of I - dt D. Any double vector x carries a residual of at
  /// least ~eps ||B||_inf ||x||_inf, which exceeds the nominal tolerance for
  /// alpha close to 2; residual checks must not demand better than that.
  double system_norm_inf() const { return system_norm_inf_; }

  std::vector<double> solve(std::span<const double> rhs) const {
    if (rhs.size() != op_.size()) throw std::invalid_argument("SolverPlan::solve: length mismatch");
    return mode_ == SolveMode::DirectFactorization ? solve_direct(rhs) : solve_cg(rhs);
  }

  /// B v = v - dt (D v), using the fast multiply.
  std::vector<double> system_matvec(std::span<const double> v) const {
    std::vector<double> dv = op_.matvec_fast(v);
    for (std::size_t j = 0; j < dv.size(); ++j) dv[j] = v[j] - dt_ * dv[j];
    return dv;
  }

 private:
  SolverPlan(const FractionalOperator& op, double dt, Options opts)
      : dt_(dt), op_(op), opts_(opts) {
    if (!(dt > 0.0)) throw std::invalid_argument("SolverPlan: dt must be positive");
    double offsum = 0.0;
    for (double t : op_.offdiag()) offsum += t;
    system_norm_inf_ = 1.0 + dt_ * (std::abs(op_.diag()) + 2.0 * offsum);
  }

  // Packed row-major lower triangle; row i starts at i(i+1)/2.
  static std::size_t row_base(std::size_t i) { return i * (i + 1) / 2; }

  void factorize() {
    const std::size_t n = op_.size();
    chol_.resize(row_base(n));
    for (std::size_t i = 0; i < n; ++i) {
      double* row = chol_.data() + row_base(i);
      row[i] = 1.0 - dt_ * op_.diag();
      for (std::size_t j = 0; j < i; ++j) row[j] = -dt_ * op_.offdiag()[i - j - 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double* ri = chol_.data() + row_base(i);
      for (std::size_t j = 0; j <= i; ++j) {
        const double* rj = chol_.data() + row_base(j);
        double s = ri[j];
        for (std::size_t k = 0; k < j; ++k) s -= ri[k] * rj[k];
        if (j < i) {
          ri[j] = s / rj[j];
        } else {
          if (!(s > 0.0))
            throw SolverBreakdownError("SolverPlan: I - dt D is not positive definite");
          ri[i] = std::sqrt(s);
        }
      }
    }
  }

  std::vector<double> solve_direct(std::span<const double> rhs) const {
    const std::size_t n = op_.size();
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = chol_.data() + row_base(i);
      double s = x[i];
      for (std::size_t k = 0; k < i; ++k) s -= row[k] * x[k];
      x[i] = s / row[i];
    }
    for (std::size_t k = n; k-- > 0;) {
      const double* row = chol_.data() + row_base(k);
      x[k] /= row[k];
      const double xk = x[k];
      for (std::size_t m = 0; m < k; ++m) x[m] -= row[m] * xk;
    }
    return x;
  }

  std::vector<double> solve_cg(std::span<const double> rhs) const {
    const std::size_t n = op_.size();
    double binf = 0.0;
    for (double b : rhs) binf = std::max(binf, std::abs(b));
    std::vector<double> x(n, 0.0);
    if (binf == 0.0) return x;
    const double target = opts_.residual_tol * binf;

    std::vector<double> r(rhs.begin(), rhs.end());
    std::vector<double> p = r;
    double rr = 0.0;
    for (double v : r) rr += v * v;

    int iter = 0;
    double best_confirmed = std::numeric_limits<double>::infinity();
    while (iter < opts_.max_inner) {
      // ||r||_inf <= ||r||_2, so this bound is conservative.
      if (std::sqrt(rr) <= target) {
        // Confirm with the true residual; the recursion can drift.
        std::vector<double> bx = system_matvec(x);
        double rinf = 0.0;
        for (std::size_t j = 0; j < n; ++j) rinf = std::max(rinf, std::abs(rhs[j] - bx[j]));
        // Accept on success, or once the confirmation stops improving: the
        // measured residual then sits at the rounding floor of the fast
        // multiply itself and the caller's extended-precision check takes
        // over.
        if (rinf <= target || rinf > 0.5 * best_confirmed) return x;
        best_confirmed = std::min(best_confirmed, rinf);
        for (std::size_t j = 0; j < n; ++j) r[j] = rhs[j] - bx[j];
        rr = 0.0;
        for (double v : r) rr += v * v;
        p = r;
      }
      std::vector<double> ap = system_matvec(p);
      double pap = 0.0;
      for (std::size_t j = 0; j < n; ++j) pap += p[j] * ap[j];
      if (!(pap > 0.0))
        throw SolverBreakdownError("SolverPlan: conjugate gradients met a nonpositive curvature");
      const double step = rr / pap;
      double rr_next = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        x[j] += step * p[j];
        r[j] -= step * ap[j];
        rr_next += r[j] * r[j];
      }
      const double ratio = rr_next / rr;
      rr = rr_next;
      for (std::size_t j = 0; j < n; ++j) p[j] = r[j] + ratio * p[j];
      ++iter;
    }
    throw SolverBreakdownError("SolverPlan: conjugate gradients exceeded the iteration cap");
  }

  SolveMode mode_ = SolveMode::DirectFactorization;
  double dt_;
  FractionalOperator op_;
  Options opts_;
  double system_norm_inf_ = 1.0;
  std::vector<double> chol_;
};

}  // namespace fracwell
