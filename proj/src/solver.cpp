#include "bergman/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bergman/kernels.h"

namespace bergman {

void SolverOptions::validate() const {
  if (!(grad_tol > 0.0)) throw std::invalid_argument("SolverOptions: grad_tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("SolverOptions: max_iters must be >= 1");
  if (multistart_count < 1) throw std::invalid_argument("SolverOptions: multistart_count must be >= 1");
}

Poly init_p2(const KernelFunctional& phi, int n) {
  if (n < 0) throw std::invalid_argument("init_p2: degree must be nonnegative");
  const Poly gn = phi.kernel().truncated(n);
  if (gn.is_zero())
    throw NoAdmissiblePoint("kernel truncated to degree " + std::to_string(n) + " is zero");
  const double nrm = a2_norm(gn);
  return (1.0 / (nrm * nrm)) * gn;
}

namespace {

namespace kk = kernels::parallel;

// The constraint phi(f) = 1 is eliminated by f = c0 + N y, where the columns
// of N are an orthonormal basis of {c : sum_k c_k conj(g_k) / (k+1) = 0}.
class ReducedProblem {
public:
  ReducedProblem(const KernelFunctional& phi, int n, const DiskGrid& grid)
      : p_(phi.exponent().p()), n_(n), weights_(grid.weights()) {
    const Poly c0 = init_p2(phi, n);
    c0_ = c0.dense(n);

    Eigen::VectorXcd a(n + 1);
    for (int k = 0; k <= n; ++k) a[k] = phi.kernel().coeff(k) / static_cast<double>(k + 1);
    // Columns 1..n of the Householder Q are orthonormal and orthogonal to a.
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr{Eigen::MatrixXcd(a)};
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n + 1, n + 1);
    null_ = q.rightCols(n);

    const auto powers = kernels::power_table(grid.nodes(), n);
    basis_ = kernels::combine(powers, null_);
    offset_.resize(grid.size());
    kk::evaluate(powers, c0_, {}, offset_);
    f_.resize(grid.size());
    u_.resize(grid.size());
    s_.resize(static_cast<size_t>(n));
  }

  int dim() const { return 2 * n_; }

  // Objective at x; leaves node values in f_.
  double value(const Eigen::VectorXd& x) {
    const auto y = to_complex(x);
    kk::evaluate(basis_, y, offset_, f_);
    return kk::power_sum(weights_, f_, p_);
  }

  // Gradient at the point of the last value() call.
  Eigen::VectorXd gradient() {
    kk::dual_weights(weights_, f_, p_, u_);
    kk::project(basis_, u_, s_);
    Eigen::VectorXd g(dim());
    for (int j = 0; j < n_; ++j) {
      g[j] = p_ * s_[j].real();
      g[n_ + j] = -p_ * s_[j].imag();
    }
    return g;
  }

  Eigen::MatrixXd hessian() const {
    double fmax = 0.0;
    for (const auto& v : f_) fmax = std::max(fmax, std::abs(v));
    return kk::hessian(basis_, weights_, f_, p_, 1e-8 * fmax);
  }

  std::vector<cplx> coefficients(const Eigen::VectorXd& x) const {
    const auto y = to_complex(x);
    Eigen::VectorXcd c = Eigen::Map<const Eigen::VectorXcd>(c0_.data(), n_ + 1);
    if (n_ > 0) c += null_ * Eigen::Map<const Eigen::VectorXcd>(y.data(), n_);
    return {c.data(), c.data() + c.size()};
  }

  double coeff_scale() const {
    double s = 0.0;
    for (const auto& c : c0_) s += std::norm(c);
    return std::sqrt(s);
  }

private:
  std::vector<cplx> to_complex(const Eigen::VectorXd& x) const {
    std::vector<cplx> y(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) y[j] = {x[j], x[n_ + j]};
    return y;
  }

  double p_;
  int n_;
  std::span<const double> weights_;
  std::vector<cplx> c0_;
  Eigen::MatrixXcd null_;
  kernels::NodeMatrix basis_;
  std::vector<cplx> offset_;
  std::vector<cplx> f_;
  std::vector<cplx> u_;
  std::vector<cplx> s_;
};

struct RunResult {
  Eigen::VectorXd x;
  double objective;
  double grad_norm;
  int iterations;
  bool converged;
};

// Backtracking search along d from x. On success updates x, value and returns true.
bool armijo(ReducedProblem& prob, Eigen::VectorXd& x, double& value, const Eigen::VectorXd& grad,
            const Eigen::VectorXd& d) {
  constexpr double kSufficient = 1e-4;
  const double slope = grad.dot(d);
  const double noise = 1e-14 * std::abs(value);
  const double gnorm = grad.norm();
  double step = 1.0;
  for (int k = 0; k < 60; ++k, step *= 0.5) {
    const Eigen::VectorXd trial = x + step * d;
    const double v = prob.value(trial);
    bool accept = v <= value + kSufficient * step * slope;
    // Near the minimum the decrease drops below rounding in the objective;
    // fall back to requiring a smaller gradient.
    if (!accept && v <= value + noise) accept = prob.gradient().norm() < gnorm;
    if (accept) {
      x = trial;
      value = v;
      return true;
    }
  }
  prob.value(x);
  return false;
}

RunResult descend(ReducedProblem& prob, Eigen::VectorXd x, const SolverOptions& opts) {
  RunResult out{x, prob.value(x), 0.0, 0, false};
  if (prob.dim() == 0) {
    out.converged = true;
    return out;
  }
  double value = out.objective;
  int it = 0;
  for (;; ++it) {
    const Eigen::VectorXd grad = prob.gradient();
    out.grad_norm = grad.norm();
    if (out.grad_norm <= opts.grad_tol) {
      out.converged = true;
      break;
    }
    if (it >= opts.max_iters) break;

    // Newton-preconditioned descent direction, steepest descent as fallback.
    Eigen::VectorXd d;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(prob.hessian());
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) d = -ldlt.solve(grad);
    const bool newton_ok = d.size() == grad.size() && d.allFinite() && grad.dot(d) < 0.0;
    bool moved = newton_ok && armijo(prob, x, value, grad, d);
    if (!moved) moved = armijo(prob, x, value, grad, -grad);
    if (!moved) {
      prob.value(x);
      out.grad_norm = prob.gradient().norm();
      out.converged = out.grad_norm <= opts.grad_tol;
      break;
    }
  }
  out.x = x;
  out.objective = value;
  out.iterations = it;
  return out;
}

ExtremalSolution assemble(const ReducedProblem& prob, const RunResult& run, int n, double p) {
  ExtremalSolution sol;
  sol.f_star = Poly(prob.coefficients(run.x));
  sol.objective = run.objective;
  const double norm = std::pow(run.objective, 1.0 / p);
  sol.phi_norm_n = 1.0 / norm;
  sol.f_hat = sol.phi_norm_n * sol.f_star;
  sol.degree = n;
  sol.grad_norm = run.grad_norm;
  sol.iterations = run.iterations;
  return sol;
}

void check_grid(const DiskGrid& grid, int n) {
  if (grid.angular_count() <= n)
    throw std::invalid_argument("solve: grid too coarse for degree " + std::to_string(n));
}

}  // namespace

std::vector<ExtremalSolution> solve_multistart(const KernelFunctional& phi, int n,
                                               const DiskGrid& grid, const SolverOptions& opts) {
  opts.validate();
  if (n < 0) throw std::invalid_argument("solve: degree must be nonnegative");
  check_grid(grid, n);
  ReducedProblem prob(phi, n, grid);
  const double p = phi.exponent().p();

  std::vector<ExtremalSolution> out;
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = prob.coeff_scale() / std::sqrt(std::max(prob.dim(), 1));
  for (int s = 0; s < opts.multistart_count; ++s) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(prob.dim());
    if (s > 0)
      for (int j = 0; j < prob.dim(); ++j) x[j] = scale * normal(rng);
    const RunResult run = descend(prob, x, opts);
    ExtremalSolution sol = assemble(prob, run, n, p);
    if (!run.converged)
      throw NotConverged("solver stopped at |grad| = " + std::to_string(run.grad_norm) +
                             " after " + std::to_string(run.iterations) + " iterations",
                         std::move(sol));
    out.push_back(std::move(sol));
  }
  return out;
}

ExtremalSolution solve(const KernelFunctional& phi, int n, const DiskGrid& grid,
                       const SolverOptions& opts) {
  auto runs = solve_multistart(phi, n, grid, opts);
  size_t best = 0;
  for (size_t i = 1; i < runs.size(); ++i)
    if (runs[i].objective < runs[best].objective) best = i;
  double spread = 0.0;
  for (const auto& r : runs)
    spread = std::max(spread, ap_norm(r.f_star - runs[best].f_star, phi.exponent(), grid));
  ExtremalSolution sol = std::move(runs[best]);
  sol.multistart_spread = spread;
  return sol;
}

ExtremalSolution solve(const KernelFunctional& phi, int n, const SolverOptions& opts) {
  if (n < 0) throw std::invalid_argument("solve: degree must be nonnegative");
  return solve(phi, n, make_disk_grid(n, phi.exponent()), opts);
}

}  // namespace bergman
