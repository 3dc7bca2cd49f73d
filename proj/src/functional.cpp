#include "bergman/functional.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bergman {

KernelFunctional::KernelFunctional(Poly g, Exponent p) : g_(std::move(g)), p_(p) {
  if (g_.is_zero()) throw std::invalid_argument("KernelFunctional: kernel must be nonzero");
}

cplx apply(const KernelFunctional& phi, const Poly& f) {
  const Poly& g = phi.kernel();
  const int n = std::min(f.degree(), g.degree());
  cplx s{};
  for (int k = 0; k <= n; ++k) s += f.coeff(k) * std::conj(g.coeff(k)) / static_cast<double>(k + 1);
  return s;
}

cplx apply_monomial(const KernelFunctional& phi, int j) {
  return std::conj(phi.kernel().coeff(j)) / static_cast<double>(j + 1);
}

double kernel_hq_norm(const KernelFunctional& phi) {
  return hp_norm(phi.kernel(), phi.exponent().q());
}

double kernel_aq_norm(const KernelFunctional& phi, const DiskGrid& grid) {
  return ap_norm(phi.kernel(), phi.exponent().conjugate(), grid);
}

double a2_norm(const Poly& f) {
  double s = 0.0;
  for (int k = 0; k <= f.degree(); ++k) s += std::norm(f.coeff(k)) / (k + 1);
  return std::sqrt(s);
}

}  // namespace bergman
