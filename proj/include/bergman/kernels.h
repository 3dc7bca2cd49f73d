#pragma once

// Quadrature-node kernels shared by the solver and the certificate code.
//
// Every kernel exists twice: `serial` is the plain reference loop kept for
// testing, `parallel` is the OpenMP version used in production. The parallel
// reductions sum fixed-size node blocks and combine the block partials in
// block order, so results do not depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bergman/poly.h"

namespace bergman::kernels {

/// Row-major complex matrix with one row per quadrature node.
struct NodeMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<cplx> data;

  NodeMatrix() = default;
  NodeMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c) {}

  cplx& operator()(size_t i, size_t j) { return data[i * cols + j]; }
  const cplx& operator()(size_t i, size_t j) const { return data[i * cols + j]; }
  std::span<const cplx> row(size_t i) const { return {data.data() + i * cols, cols}; }
};

/// Table of z_i^k for k = 0..n.
NodeMatrix power_table(std::span<const cplx> nodes, int n);

/// basis * coeffs, i.e. row-wise linear combination.
NodeMatrix combine(const NodeMatrix& basis, const Eigen::MatrixXcd& coeffs);

inline constexpr size_t kBlock = 256;

namespace serial {

/// out_i = offset_i + sum_j basis(i, j) coeffs_j. `offset` may be empty.
void evaluate(const NodeMatrix& basis, std::span<const cplx> coeffs,
              std::span<const cplx> offset, std::span<cplx> out);

/// sum_i w_i |f_i|^p
double power_sum(std::span<const double> w, std::span<const cplx> f, double p);

/// out_i = w_i |f_i|^{p-1} conj(sgn f_i), with sgn 0 = 0.
void dual_weights(std::span<const double> w, std::span<const cplx> f, double p,
                  std::span<cplx> out);

/// out_j = sum_i basis(i, j) u_i
void project(const NodeMatrix& basis, std::span<const cplx> u, std::span<cplx> out);

/// Hessian of sum_i w_i |f_i|^p in real coordinates (Re y, Im y) where
/// f = offset + basis * y. |f_i| is clamped below by `floor` so the p < 2
/// curvature stays finite.
Eigen::MatrixXd hessian(const NodeMatrix& basis, std::span<const double> w,
                        std::span<const cplx> f, double p, double floor);

}  // namespace serial

namespace parallel {

void evaluate(const NodeMatrix& basis, std::span<const cplx> coeffs,
              std::span<const cplx> offset, std::span<cplx> out);
double power_sum(std::span<const double> w, std::span<const cplx> f, double p);
void dual_weights(std::span<const double> w, std::span<const cplx> f, double p,
                  std::span<cplx> out);
void project(const NodeMatrix& basis, std::span<const cplx> u, std::span<cplx> out);
Eigen::MatrixXd hessian(const NodeMatrix& basis, std::span<const double> w,
                        std::span<const cplx> f, double p, double floor);

}  // namespace parallel

}  // namespace bergman::kernels
