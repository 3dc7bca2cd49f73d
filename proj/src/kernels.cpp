#include "bergman/kernels.h"

#include <algorithm>
#include <cmath>

namespace bergman::kernels {

NodeMatrix power_table(std::span<const cplx> nodes, int n) {
  NodeMatrix t(nodes.size(), static_cast<size_t>(n + 1));
  for (size_t i = 0; i < nodes.size(); ++i) {
    cplx zk = 1.0;
    for (int k = 0; k <= n; ++k) {
      t(i, k) = zk;
      zk *= nodes[i];
    }
  }
  return t;
}

NodeMatrix combine(const NodeMatrix& basis, const Eigen::MatrixXcd& coeffs) {
  NodeMatrix out(basis.rows, static_cast<size_t>(coeffs.cols()));
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(basis.rows); ++i) {
    for (size_t j = 0; j < out.cols; ++j) {
      cplx s{};
      for (size_t k = 0; k < basis.cols; ++k) s += basis(i, k) * coeffs(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

namespace {

inline double abs_pow(cplx f, double p) { return std::pow(std::abs(f), p); }

inline cplx dual_term(double w, cplx f, double p) {
  const double a = std::abs(f);
  if (a == 0.0) return {};
  return w * std::pow(a, p - 2.0) * std::conj(f);
}

// Writes the two factor columns of one node's Hessian contribution
// u u^T + u' u'^T into columns col, col + 1 of b.
void node_hessian_factor(Eigen::MatrixXd& b, Eigen::Index col, std::span<const cplx> v, double w,
                         cplx f, double p, double floor) {
  const size_t m = v.size();
  const double a = std::max(std::abs(f), floor);
  if (a == 0.0) {
    b.col(col).setZero();
    b.col(col + 1).setZero();
    return;
  }
  const cplx sgn = std::abs(f) > 0.0 ? std::conj(f) / std::abs(f) : cplx{1.0, 0.0};
  const double base = w * p * std::pow(a, p - 2.0);
  const double along = std::sqrt(base * (p - 1.0));
  const double across = std::sqrt(base);
  for (size_t j = 0; j < m; ++j) {
    const cplx t = sgn * v[j];
    b(j, col) = along * t.real();
    b(m + j, col) = -along * t.imag();
    b(j, col + 1) = across * t.imag();
    b(m + j, col + 1) = across * t.real();
  }
}

Eigen::MatrixXd symmetrize(Eigen::MatrixXd h) {
  h.triangularView<Eigen::StrictlyUpper>() = h.transpose();
  return h;
}

size_t block_count(size_t n) { return (n + kBlock - 1) / kBlock; }

}  // namespace

namespace serial {

void evaluate(const NodeMatrix& basis, std::span<const cplx> coeffs,
              std::span<const cplx> offset, std::span<cplx> out) {
  for (size_t i = 0; i < basis.rows; ++i) {
    cplx s = offset.empty() ? cplx{} : offset[i];
    for (size_t j = 0; j < basis.cols; ++j) s += basis(i, j) * coeffs[j];
    out[i] = s;
  }
}

double power_sum(std::span<const double> w, std::span<const cplx> f, double p) {
  double s = 0.0;
  for (size_t i = 0; i < f.size(); ++i) s += w[i] * abs_pow(f[i], p);
  return s;
}

void dual_weights(std::span<const double> w, std::span<const cplx> f, double p,
                  std::span<cplx> out) {
  for (size_t i = 0; i < f.size(); ++i) out[i] = dual_term(w[i], f[i], p);
}

void project(const NodeMatrix& basis, std::span<const cplx> u, std::span<cplx> out) {
  std::fill(out.begin(), out.end(), cplx{});
  for (size_t i = 0; i < basis.rows; ++i)
    for (size_t j = 0; j < basis.cols; ++j) out[j] += basis(i, j) * u[i];
}

Eigen::MatrixXd hessian(const NodeMatrix& basis, std::span<const double> w,
                        std::span<const cplx> f, double p, double floor) {
  const Eigen::Index dim = static_cast<Eigen::Index>(2 * basis.cols);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd b(dim, 2);
  for (size_t i = 0; i < basis.rows; ++i) {
    node_hessian_factor(b, 0, basis.row(i), w[i], f[i], p, floor);
    h.noalias() += b * b.transpose();
  }
  return symmetrize(std::move(h));
}

}  // namespace serial

namespace parallel {

void evaluate(const NodeMatrix& basis, std::span<const cplx> coeffs,
              std::span<const cplx> offset, std::span<cplx> out) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(basis.rows); ++i) {
    cplx s = offset.empty() ? cplx{} : offset[i];
    for (size_t j = 0; j < basis.cols; ++j) s += basis(i, j) * coeffs[j];
    out[i] = s;
  }
}

double power_sum(std::span<const double> w, std::span<const cplx> f, double p) {
  const size_t nb = block_count(f.size());
  std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
  for (long b = 0; b < static_cast<long>(nb); ++b) {
    const size_t lo = b * kBlock, hi = std::min(f.size(), lo + kBlock);
    double s = 0.0;
    for (size_t i = lo; i < hi; ++i) s += w[i] * abs_pow(f[i], p);
    partial[b] = s;
  }
  double s = 0.0;
  for (double x : partial) s += x;
  return s;
}

void dual_weights(std::span<const double> w, std::span<const cplx> f, double p,
                  std::span<cplx> out) {
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(f.size()); ++i) out[i] = dual_term(w[i], f[i], p);
}

void project(const NodeMatrix& basis, std::span<const cplx> u, std::span<cplx> out) {
  const size_t nb = block_count(basis.rows);
  const size_t m = basis.cols;
  std::vector<cplx> partial(nb * m, cplx{});
#pragma omp parallel for schedule(static)
  for (long b = 0; b < static_cast<long>(nb); ++b) {
    const size_t lo = b * kBlock, hi = std::min(basis.rows, lo + kBlock);
    cplx* acc = partial.data() + b * m;
    for (size_t i = lo; i < hi; ++i)
      for (size_t j = 0; j < m; ++j) acc[j] += basis(i, j) * u[i];
  }
  std::fill(out.begin(), out.end(), cplx{});
  for (size_t b = 0; b < nb; ++b)
    for (size_t j = 0; j < m; ++j) out[j] += partial[b * m + j];
}

Eigen::MatrixXd hessian(const NodeMatrix& basis, std::span<const double> w,
                        std::span<const cplx> f, double p, double floor) {
  const size_t nb = block_count(basis.rows);
  const Eigen::Index dim = static_cast<Eigen::Index>(2 * basis.cols);
  std::vector<Eigen::MatrixXd> partial(nb);
#pragma omp parallel for schedule(static)
  for (long b = 0; b < static_cast<long>(nb); ++b) {
    const size_t lo = b * kBlock, hi = std::min(basis.rows, lo + kBlock);
    Eigen::MatrixXd factor(dim, static_cast<Eigen::Index>(2 * (hi - lo)));
    for (size_t i = lo; i < hi; ++i)
      node_hessian_factor(factor, static_cast<Eigen::Index>(2 * (i - lo)), basis.row(i), w[i], f[i], p,
                          floor);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    h.selfadjointView<Eigen::Lower>().rankUpdate(factor);
    partial[b] = std::move(h);
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& part : partial) h += part;
  return symmetrize(std::move(h));
}

}  // namespace parallel

}  // namespace bergman::kernels
