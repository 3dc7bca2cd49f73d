#include "bergman/quadrature.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace bergman {

Exponent::Exponent(double p) : p_(p), q_(0.0) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("exponent p must satisfy 1 < p < inf");
  q_ = p / (p - 1.0);
}

bool Exponent::is_even_integer() const {
  return std::abs(p_ - std::round(p_)) < 1e-12 && static_cast<long>(std::round(p_)) % 2 == 0;
}

namespace {

// (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  if (n == 1) p0 = 1.0;
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendre gauss_legendre(int count) {
  if (count < 1) throw std::invalid_argument("gauss_legendre: count must be positive");
  GaussLegendre gl;
  gl.nodes.resize(count);
  gl.weights.resize(count);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [pn, dpn] = legendre(count, x);
      const double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    const double dpn = legendre(count, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dpn * dpn);
    gl.nodes[count - 1 - i] = x;
    gl.nodes[i] = -x;
    gl.weights[i] = w;
    gl.weights[count - 1 - i] = w;
  }
  if (count % 2 == 1) gl.nodes[count / 2] = 0.0;
  return gl;
}

DiskGrid::DiskGrid(std::vector<double> radial_nodes, std::vector<double> radial_weights,
                   int angular_count)
    : radii_(std::move(radial_nodes)),
      radial_weights_(std::move(radial_weights)),
      angular_count_(angular_count) {
  if (radii_.size() != radial_weights_.size() || radii_.empty())
    throw std::invalid_argument("DiskGrid: radial nodes and weights mismatch");
  if (angular_count_ < 1) throw std::invalid_argument("DiskGrid: angular_count must be >= 1");
  for (double r : radii_)
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("DiskGrid: radial node outside (0,1)");

  nodes_.reserve(radii_.size() * angular_count_);
  weights_.reserve(radii_.size() * angular_count_);
  for (size_t i = 0; i < radii_.size(); ++i) {
    for (int j = 0; j < angular_count_; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / angular_count_;
      nodes_.push_back(std::polar(radii_[i], theta));
      weights_.push_back(radial_weights_[i] / angular_count_);
    }
  }
}

int DiskGrid::exactness_degree() const {
  // z^a conj(z)^b: angular rule kills a != b when |a - b| < angular_count;
  // a == b leaves t^a, exact when a <= 2k - 1.
  const int radial = 2 * static_cast<int>(radii_.size()) - 1;
  return std::min(radial, angular_count_ - 1);
}

namespace {

// Even p: exact rule. Otherwise |f|^p is only Hoelder continuous at the zeros
// of f and both rules converge algebraically; the counts below keep a grid
// doubling below 1e-6 for degree <= 8 and p >= 1.2.
int angular_nodes(int n, const Exponent& p) {
  const int band = static_cast<int>(std::ceil(p.p())) * n + 1;
  if (p.is_even_integer()) return std::max(64, band);
  return std::max(768, 2 * band);
}

int radial_nodes(int n, const Exponent& p) {
  if (p.is_even_integer()) {
    // Angular average of |f|^{2m} is a polynomial of degree m n in t = r^2.
    const int m = static_cast<int>(std::round(p.p())) / 2;
    return std::max(2 * (n + 4), (m * n + 2) / 2);
  }
  return 5 * (n + 4);
}

}  // namespace

DiskGrid make_disk_grid(int max_poly_degree, const Exponent& p) {
  return make_disk_grid(max_poly_degree, p, 1);
}

DiskGrid make_disk_grid(int max_poly_degree, const Exponent& p, int refine) {
  if (max_poly_degree < 0) throw std::invalid_argument("make_disk_grid: negative degree");
  if (refine < 1) throw std::invalid_argument("make_disk_grid: refine must be >= 1");
  const int k = radial_nodes(max_poly_degree, p) * refine;
  const int m = angular_nodes(max_poly_degree, p) * refine;
  const GaussLegendre gl = gauss_legendre(k);
  std::vector<double> r(k), w(k);
  for (int i = 0; i < k; ++i) {
    r[i] = std::sqrt(0.5 * (gl.nodes[i] + 1.0));
    w[i] = 0.5 * gl.weights[i];
  }
  return DiskGrid(std::move(r), std::move(w), m);
}

CircleGrid::CircleGrid(double radius, int angular_count) : radius_(radius), count_(angular_count) {
  if (!(radius > 0.0 && radius <= 1.0)) throw std::invalid_argument("CircleGrid: radius must lie in (0,1]");
  if (angular_count < 1) throw std::invalid_argument("CircleGrid: angular_count must be >= 1");
}

cplx CircleGrid::node(int j) const {
  return std::polar(radius_, 2.0 * std::numbers::pi * j / count_);
}

int circle_resolution(int deg, double p) {
  const double pc = std::isfinite(p) ? std::ceil(p) : 8.0;
  const int base = static_cast<int>(pc) * std::max(deg, 0) + 1;
  return std::max(512, 4 * base);
}

double ap_norm(const Poly& f, const Exponent& p, const DiskGrid& grid) {
  const double pp = p.p();
  const double s = grid.integrate([&](cplx z) { return std::pow(std::abs(f(z)), pp); });
  return std::pow(s, 1.0 / pp);
}

double integral_mean(const Poly& f, double p, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("integral_mean: r must lie in (0,1]");
  if (!(p > 0.0)) throw std::invalid_argument("integral_mean: p must be positive");
  const CircleGrid circle(r, circle_resolution(f.degree(), p));
  const int n = circle.angular_count();
  if (std::isinf(p)) {
    double m = 0.0;
    for (int j = 0; j < n; ++j) m = std::max(m, std::abs(f(circle.node(j))));
    return m;
  }
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += std::pow(std::abs(f(circle.node(j))), p);
  return std::pow(s / n, 1.0 / p);
}

double integral_mean(const Poly& f, const Exponent& p, double r) { return integral_mean(f, p.p(), r); }

double hp_norm(const Poly& f, const Exponent& p) { return integral_mean(f, p.p(), 1.0); }

double hp_norm(const Poly& f, double p) { return integral_mean(f, p, 1.0); }

}  // namespace bergman
