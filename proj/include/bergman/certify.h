#pragma once

#include <utility>
#include <vector>

#include "bergman/functional.h"
#include "bergman/quadrature.h"
#include "bergman/solver.h"

namespace bergman {

/// Extremality residuals on the monomial basis of P_n:
///   residuals[j] = int z^j |f|^{p-1} conj(sgn f) dsigma - phi(z^j) / phi_norm_n.
struct Certificate {
  std::vector<cplx> residuals;
  double max_residual = 0.0;
};

/// Moments psi(z^j) of the discretized norming functional of an element.
struct RecoveredFunctional {
  std::vector<cplx> moments;

  /// psi(f) = sum_k f_k psi(z^k) over the stored moments.
  cplx operator()(const Poly& f) const;
};

/// Integral means of f_hat_n against the C_p-free Ryabykh bound
///   [((p/2) ||g||_{H^q} + |1 - p/2| ||G||_{H^q}) / phi_norm_n]^{q/p}.
struct BoundReport {
  std::vector<double> r_values;
  std::vector<double> lhs;
  double rhs = 0.0;
  double slack = 0.0;
};

Certificate extremality_residual(const Poly& f_hat, const KernelFunctional& phi,
                                 double phi_norm_n, int n, const DiskGrid& grid);

/// Throws std::invalid_argument if f is zero.
RecoveredFunctional recover_functional(const Poly& f, const Exponent& p, int n,
                                       const DiskGrid& grid);

BoundReport ryabykh_check(const ExtremalSolution& sol, const KernelFunctional& phi,
                          const std::vector<double>& r_values);

/// (||G||_{H^q}, ||g||_{H^q}) with G the averaged antiderivative of g.
std::pair<double, double> minkowski_check(const Poly& g, double q);

/// int z^j |f|^{p-1} conj(sgn f) dsigma for j = 0..n (parallel kernels).
std::vector<cplx> dual_moments(const Poly& f, double p, int n, const DiskGrid& grid);

}  // namespace bergman
