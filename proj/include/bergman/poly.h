#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace bergman {

using cplx = std::complex<double>;

/// Analytic polynomial sum_k coeffs[k] z^k with complex coefficients.
///
/// Trailing zero coefficients are stripped on construction, so the zero
/// polynomial has an empty coefficient vector and degree -1. Values are
/// immutable once built.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs);
  Poly(std::initializer_list<cplx> coeffs);

  /// Monomial c * z^k.
  static Poly monomial(int k, cplx c = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of z^k; zero past the degree.
  cplx coeff(int k) const;
  std::span<const cplx> coeffs() const { return coeffs_; }

  /// Coefficients padded (or cut) to length n+1.
  std::vector<cplx> dense(int n) const;

  /// Horner evaluation.
  cplx operator()(cplx z) const;

  /// Drop every term of degree > n.
  Poly truncated(int n) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(cplx s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) = default;

private:
  std::vector<cplx> coeffs_;
};

inline cplx eval(const Poly& f, cplx z) { return f(z); }

Poly derivative(const Poly& f);

/// G(z) = (1/z) * integral_0^z g, i.e. the coefficient map b_k -> b_k/(k+1).
/// Satisfies (z G)' = g.
Poly averaged_antiderivative(const Poly& g);

/// Multiplication by z.
Poly shift_up(const Poly& f);

/// Largest coefficient modulus of a - b.
double max_coeff_distance(const Poly& a, const Poly& b);

}  // namespace bergman
