#include "bergman/certify.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bergman/kernels.h"

namespace bergman {

std::vector<cplx> dual_moments(const Poly& f, double p, int n, const DiskGrid& grid) {
  namespace kk = kernels::parallel;
  const int m = std::max(n, f.degree());
  const auto powers = kernels::power_table(grid.nodes(), m);
  const auto coeffs = f.dense(m);
  std::vector<cplx> values(grid.size()), u(grid.size()), moments(static_cast<size_t>(m + 1));
  kk::evaluate(powers, coeffs, {}, values);
  kk::dual_weights(grid.weights(), values, p, u);
  kk::project(powers, u, moments);
  moments.resize(static_cast<size_t>(n + 1));
  return moments;
}

Certificate extremality_residual(const Poly& f_hat, const KernelFunctional& phi,
                                 double phi_norm_n, int n, const DiskGrid& grid) {
  Certificate cert;
  cert.residuals = dual_moments(f_hat, phi.exponent().p(), n, grid);
  for (int j = 0; j <= n; ++j) {
    cert.residuals[j] -= apply_monomial(phi, j) / phi_norm_n;
    cert.max_residual = std::max(cert.max_residual, std::abs(cert.residuals[j]));
  }
  return cert;
}

cplx RecoveredFunctional::operator()(const Poly& f) const {
  cplx s{};
  const int n = std::min(f.degree(), static_cast<int>(moments.size()) - 1);
  for (int k = 0; k <= n; ++k) s += f.coeff(k) * moments[k];
  return s;
}

RecoveredFunctional recover_functional(const Poly& f, const Exponent& p, int n,
                                       const DiskGrid& grid) {
  if (f.is_zero()) throw std::invalid_argument("recover_functional: element must be nonzero");
  const double pp = p.p();
  const double mass = grid.integrate([&](cplx z) { return std::pow(std::abs(f(z)), pp); });
  RecoveredFunctional psi{dual_moments(f, pp, n, grid)};
  for (auto& m : psi.moments) m /= mass;
  return psi;
}

BoundReport ryabykh_check(const ExtremalSolution& sol, const KernelFunctional& phi,
                          const std::vector<double>& r_values) {
  const double p = phi.exponent().p();
  const double q = phi.exponent().q();
  const Poly big_g = averaged_antiderivative(phi.kernel());
  const double inner = (p / 2.0) * hp_norm(phi.kernel(), q) + std::abs(1.0 - p / 2.0) * hp_norm(big_g, q);

  BoundReport rep;
  rep.r_values = r_values;
  rep.rhs = std::pow(inner / sol.phi_norm_n, q / p);
  double worst = 0.0;
  for (double r : r_values) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("ryabykh_check: radius outside (0,1]");
    rep.lhs.push_back(integral_mean(sol.f_hat, p, r));
    worst = std::max(worst, rep.lhs.back());
  }
  rep.slack = rep.rhs - worst;
  return rep;
}

std::pair<double, double> minkowski_check(const Poly& g, double q) {
  if (!(q > 1.0)) throw std::invalid_argument("minkowski_check: q must exceed 1");
  return {hp_norm(averaged_antiderivative(g), q), hp_norm(g, q)};
}

}  // namespace bergman
