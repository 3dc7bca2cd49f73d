#include "bergman/poly.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bergman {

namespace {

void trim(std::vector<cplx>& c) {
  while (!c.empty() && c.back() == cplx{0.0, 0.0}) c.pop_back();
}

}  // namespace

Poly::Poly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(coeffs_); }

Poly::Poly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { trim(coeffs_); }

Poly Poly::monomial(int k, cplx c) {
  if (k < 0) throw std::invalid_argument("monomial: negative power");
  std::vector<cplx> v(static_cast<size_t>(k) + 1, cplx{});
  v.back() = c;
  return Poly(std::move(v));
}

cplx Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<size_t>(k)];
}

std::vector<cplx> Poly::dense(int n) const {
  std::vector<cplx> out(static_cast<size_t>(std::max(n + 1, 0)), cplx{});
  const size_t m = std::min(out.size(), coeffs_.size());
  std::copy_n(coeffs_.begin(), m, out.begin());
  return out;
}

cplx Poly::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::truncated(int n) const {
  if (n >= degree()) return *this;
  return Poly(dense(n));
}

Poly operator+(const Poly& a, const Poly& b) {
  const int n = std::max(a.degree(), b.degree());
  std::vector<cplx> c(static_cast<size_t>(n + 1));
  for (int k = 0; k <= n; ++k) c[k] = a.coeff(k) + b.coeff(k);
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-1.0) * b; }

Poly operator*(cplx s, const Poly& a) {
  std::vector<cplx> c(a.coeffs_.begin(), a.coeffs_.end());
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

Poly derivative(const Poly& f) {
  if (f.degree() < 1) return {};
  std::vector<cplx> c(static_cast<size_t>(f.degree()));
  for (int k = 1; k <= f.degree(); ++k) c[k - 1] = static_cast<double>(k) * f.coeff(k);
  return Poly(std::move(c));
}

Poly averaged_antiderivative(const Poly& g) {
  std::vector<cplx> c(g.coeffs().begin(), g.coeffs().end());
  for (size_t k = 0; k < c.size(); ++k) c[k] /= static_cast<double>(k + 1);
  return Poly(std::move(c));
}

Poly shift_up(const Poly& f) {
  if (f.is_zero()) return {};
  std::vector<cplx> c(static_cast<size_t>(f.degree()) + 2, cplx{});
  std::copy(f.coeffs().begin(), f.coeffs().end(), c.begin() + 1);
  return Poly(std::move(c));
}

double max_coeff_distance(const Poly& a, const Poly& b) {
  double d = 0.0;
  const int n = std::max(a.degree(), b.degree());
  for (int k = 0; k <= n; ++k) d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
  return d;
}

}  // namespace bergman
