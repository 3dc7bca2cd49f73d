#pragma once

#include "bergman/poly.h"
#include "bergman/quadrature.h"

namespace bergman {

/// Linear functional phi(f) = integral_D f conj(g) dsigma on A^p, represented
/// by its polynomial kernel g.
class KernelFunctional {
public:
  /// Throws std::invalid_argument if g is the zero polynomial.
  KernelFunctional(Poly g, Exponent p);

  const Poly& kernel() const { return g_; }
  const Exponent& exponent() const { return p_; }

private:
  Poly g_;
  Exponent p_;
};

/// Exact pairing sum_k f_k conj(g_k) / (k + 1).
cplx apply(const KernelFunctional& phi, const Poly& f);

/// phi(z^j) = conj(g_j) / (j + 1).
cplx apply_monomial(const KernelFunctional& phi, int j);

double kernel_hq_norm(const KernelFunctional& phi);
double kernel_aq_norm(const KernelFunctional& phi, const DiskGrid& grid);

/// Exact A^2 norm sqrt(sum |c_k|^2 / (k + 1)).
double a2_norm(const Poly& f);

}  // namespace bergman
