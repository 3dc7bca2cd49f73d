#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bergman/functional.h"
#include "bergman/poly.h"
#include "bergman/quadrature.h"

namespace bergman {

struct SolverOptions {
  double grad_tol = 1e-10;
  int max_iters = 10000;
  int multistart_count = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Solution of the extremal problems over polynomials of degree <= n.
///
/// f_hat maximizes Re phi over the unit sphere of A^p; f_star has minimal
/// A^p norm among f with phi(f) = 1. They satisfy
/// f_hat = phi_norm_n * f_star and phi_norm_n = 1 / ||f_star||.
struct ExtremalSolution {
  Poly f_hat;
  Poly f_star;
  double phi_norm_n = 0.0;
  int degree = 0;
  double grad_norm = 0.0;
  int iterations = 0;
  /// Discretized sum w |f_star|^p at the solution.
  double objective = 0.0;
  /// Largest A^p distance between the f_star of independent starts (0 for one start).
  double multistart_spread = 0.0;
};

/// The kernel truncated to degree n vanishes, so phi(f) = 1 has no solution in P_n.
class NoAdmissiblePoint : public std::domain_error {
public:
  explicit NoAdmissiblePoint(const std::string& what) : std::domain_error(what) {}
};

/// max_iters was reached with the reduced gradient above grad_tol.
class NotConverged : public std::runtime_error {
public:
  NotConverged(const std::string& what, ExtremalSolution partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ExtremalSolution& partial() const { return partial_; }

private:
  ExtremalSolution partial_;
};

/// Exact value-1 extremal for p = 2 over P_n: g_n / ||g_n||_{A^2}^2.
Poly init_p2(const KernelFunctional& phi, int n);

/// Solve over P_n on the default grid for degree n.
ExtremalSolution solve(const KernelFunctional& phi, int n, const SolverOptions& opts = {});

/// Solve over P_n on a caller-supplied grid. Sweeps over n should share one
/// grid so that the discretized subspace problems are nested.
ExtremalSolution solve(const KernelFunctional& phi, int n, const DiskGrid& grid,
                       const SolverOptions& opts = {});

/// One run per start: the warm start first, then multistart_count - 1 random
/// admissible starts drawn from opts.seed.
std::vector<ExtremalSolution> solve_multistart(const KernelFunctional& phi, int n,
                                               const DiskGrid& grid, const SolverOptions& opts);

}  // namespace bergman
