#pragma once

#include <vector>

#include "bergman/poly.h"

namespace bergman {

/// Conjugate exponent pair 1/p + 1/q = 1 with 1 < p < infinity.
class Exponent {
public:
  /// Throws std::invalid_argument unless 1 < p < infinity.
  explicit Exponent(double p);

  double p() const { return p_; }
  double q() const { return q_; }
  Exponent conjugate() const { return Exponent(q_); }
  /// True when p is an even integer, in which case |f|^p is a polynomial in z, conj(z).
  bool is_even_integer() const;

private:
  double p_;
  double q_;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int count);

/// Product rule for the normalized area measure on the unit disk.
///
/// The radial rule is Gauss-Legendre in t = r^2 on [0, 1] and the angular
/// rule is the equispaced trapezoid. Node (i, j) sits at
/// r_i exp(2 pi i j / angular_count) with weight radial_weights[i] / angular_count.
/// Nodes are stored ring-major.
class DiskGrid {
public:
  DiskGrid(std::vector<double> radial_nodes, std::vector<double> radial_weights,
           int angular_count);

  const std::vector<double>& radial_nodes() const { return radii_; }
  const std::vector<double>& radial_weights() const { return radial_weights_; }
  int angular_count() const { return angular_count_; }

  size_t size() const { return nodes_.size(); }
  const std::vector<cplx>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Largest a such that z^a conj(z)^b is integrated exactly for all a, b <= a.
  int exactness_degree() const;

  /// Sum of w * u(z) over the nodes, accumulated ring by ring.
  template <class F>
  auto integrate(F&& u) const {
    using T = decltype(u(cplx{}) * 1.0);
    T acc{};
    const size_t m = static_cast<size_t>(angular_count_);
    for (size_t i = 0; i < radii_.size(); ++i) {
      T ring{};
      for (size_t j = 0; j < m; ++j) ring += u(nodes_[i * m + j]);
      acc += ring * (radial_weights_[i] / static_cast<double>(m));
    }
    return acc;
  }

private:
  std::vector<double> radii_;
  std::vector<double> radial_weights_;
  int angular_count_;
  std::vector<cplx> nodes_;
  std::vector<double> weights_;
};

/// Grid sized for polynomials of degree <= max_poly_degree under exponent p.
/// Exact for |f|^p (and the extremality integrands) when p is an even integer.
DiskGrid make_disk_grid(int max_poly_degree, const Exponent& p);

/// Same, with radial and angular node counts multiplied by `refine`.
DiskGrid make_disk_grid(int max_poly_degree, const Exponent& p, int refine);

/// Equispaced rule on |z| = radius.
class CircleGrid {
public:
  CircleGrid(double radius, int angular_count);

  double radius() const { return radius_; }
  int angular_count() const { return count_; }
  cplx node(int j) const;

private:
  double radius_;
  int count_;
};

/// Angular node count used by integral_mean for a polynomial of degree `deg`.
int circle_resolution(int deg, double p);

/// (sum w |f|^p)^{1/p} on the given grid.
double ap_norm(const Poly& f, const Exponent& p, const DiskGrid& grid);

/// Integral mean M_p(f, r). Pass p = +infinity for the sup mean M_inf.
/// Throws std::invalid_argument for r outside (0, 1] or p <= 0.
double integral_mean(const Poly& f, double p, double r);
double integral_mean(const Poly& f, const Exponent& p, double r);

/// ||f||_{H^p} = M_p(f, 1) for a polynomial.
double hp_norm(const Poly& f, const Exponent& p);
double hp_norm(const Poly& f, double p);

}  // namespace bergman
