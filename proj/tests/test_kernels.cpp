#include <doctest.h>

#include <omp.h>

#include <random>

#include "bergman/kernels.h"
#include "bergman/quadrature.h"
#include "oracles.h"

using namespace bergman;
namespace kn = bergman::kernels;

namespace {

struct Fixture {
  DiskGrid grid = make_disk_grid(9, Exponent(1.7));
  kn::NodeMatrix basis;
  std::vector<cplx> coeffs, offset, f;

  Fixture() {
    std::mt19937_64 rng(99);
    basis = kn::power_table(grid.nodes(), 9);
    const Poly c = oracle::random_poly(9, rng);
    const Poly o = oracle::random_poly(0, rng);
    coeffs = c.dense(9);
    offset.assign(grid.size(), o.coeff(0));
    f.resize(grid.size());
    kn::serial::evaluate(basis, coeffs, offset, f);
  }
};

}  // namespace

TEST_CASE("power table") {
  const std::vector<cplx> z{cplx(0.5, 0.5), cplx(-0.3, 0.0)};
  const auto t = kn::power_table(z, 3);
  CHECK(t.rows == 2);
  CHECK(t.cols == 4);
  CHECK(t(0, 0) == cplx(1.0));
  CHECK(std::abs(t(0, 3) - std::pow(z[0], 3)) < 1e-16);
  CHECK(std::abs(t(1, 2) - 0.09) < 1e-16);
}

TEST_CASE("serial evaluate matches Horner") {
  Fixture fx;
  const Poly c(fx.coeffs);
  for (size_t i = 0; i < fx.grid.size(); i += 97)
    CHECK(std::abs(fx.f[i] - (c(fx.grid.nodes()[i]) + fx.offset[i])) < 1e-14);
}

TEST_CASE("parallel kernels agree with the serial reference") {
  Fixture fx;
  const double p = 1.7;
  std::vector<cplx> fp(fx.grid.size());
  kn::parallel::evaluate(fx.basis, fx.coeffs, fx.offset, fp);
  for (size_t i = 0; i < fp.size(); ++i) CHECK(fp[i] == fx.f[i]);

  const double ss = kn::serial::power_sum(fx.grid.weights(), fx.f, p);
  const double sp = kn::parallel::power_sum(fx.grid.weights(), fx.f, p);
  CHECK(std::abs(ss - sp) < 1e-14 * ss);

  std::vector<cplx> us(fx.f.size()), up(fx.f.size());
  kn::serial::dual_weights(fx.grid.weights(), fx.f, p, us);
  kn::parallel::dual_weights(fx.grid.weights(), fx.f, p, up);
  CHECK(us == up);

  std::vector<cplx> ps(fx.basis.cols), pp(fx.basis.cols);
  kn::serial::project(fx.basis, us, ps);
  kn::parallel::project(fx.basis, up, pp);
  for (size_t j = 0; j < ps.size(); ++j) CHECK(std::abs(ps[j] - pp[j]) < 1e-14);

  const auto hs = kn::serial::hessian(fx.basis, fx.grid.weights(), fx.f, p, 0.0);
  const auto hp = kn::parallel::hessian(fx.basis, fx.grid.weights(), fx.f, p, 0.0);
  CHECK((hs - hp).cwiseAbs().maxCoeff() < 1e-12 * hs.cwiseAbs().maxCoeff());
  CHECK((hp - hp.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parallel reductions are independent of the thread count") {
  Fixture fx;
  const double p = 3.3;
  std::vector<cplx> u(fx.f.size()), a(fx.basis.cols), b(fx.basis.cols);
  kn::parallel::dual_weights(fx.grid.weights(), fx.f, p, u);

  omp_set_num_threads(1);
  const double s1 = kn::parallel::power_sum(fx.grid.weights(), fx.f, p);
  kn::parallel::project(fx.basis, u, a);
  const auto h1 = kn::parallel::hessian(fx.basis, fx.grid.weights(), fx.f, p, 1e-9);
  omp_set_num_threads(5);
  const double s5 = kn::parallel::power_sum(fx.grid.weights(), fx.f, p);
  kn::parallel::project(fx.basis, u, b);
  const auto h5 = kn::parallel::hessian(fx.basis, fx.grid.weights(), fx.f, p, 1e-9);
  omp_set_num_threads(omp_get_num_procs());

  CHECK(s1 == s5);
  CHECK(a == b);
  CHECK(h1 == h5);
}

TEST_CASE("dual weights use sgn(0) = 0") {
  const std::vector<double> w{0.5, 0.5};
  const std::vector<cplx> f{cplx(0.0), cplx(3.0, 4.0)};
  std::vector<cplx> u(2);
  kn::serial::dual_weights(w, f, 1.5, u);
  CHECK(u[0] == cplx(0.0));
  // w |f|^{p-1} conj(f / |f|) = 0.5 * 5^{0.5} * (3 - 4i) / 5
  CHECK(std::abs(u[1] - 0.5 * std::sqrt(5.0) * cplx(3.0, -4.0) / 5.0) < 1e-15);
}

TEST_CASE("gradient and Hessian match finite differences") {
  // Objective F(y) = sum w |offset + basis y|^p over real coordinates (Re y, Im y).
  Fixture fx;
  const double p = 2.7;
  const size_t m = fx.basis.cols;
  auto objective = [&](const std::vector<cplx>& y) {
    std::vector<cplx> v(fx.grid.size());
    kn::serial::evaluate(fx.basis, y, fx.offset, v);
    return kn::serial::power_sum(fx.grid.weights(), v, p);
  };
  auto gradient = [&](const std::vector<cplx>& y) {
    std::vector<cplx> v(fx.grid.size()), u(fx.grid.size()), s(m);
    kn::serial::evaluate(fx.basis, y, fx.offset, v);
    kn::serial::dual_weights(fx.grid.weights(), v, p, u);
    kn::serial::project(fx.basis, u, s);
    Eigen::VectorXd g(2 * m);
    for (size_t j = 0; j < m; ++j) {
      g[j] = p * s[j].real();
      g[m + j] = -p * s[j].imag();
    }
    return g;
  };
  const std::vector<cplx> y = fx.coeffs;
  const Eigen::VectorXd g = gradient(y);
  const double h = 1e-6;
  for (size_t k = 0; k < 2 * m; ++k) {
    auto yp = y, ym = y;
    const cplx step = k < m ? cplx(h, 0.0) : cplx(0.0, h);
    yp[k % m] += step;
    ym[k % m] -= step;
    const double fd = (objective(yp) - objective(ym)) / (2.0 * h);
    CHECK(std::abs(fd - g[k]) < 1e-6 * (1.0 + std::abs(g[k])));
  }
  std::vector<cplx> v(fx.grid.size());
  kn::serial::evaluate(fx.basis, y, fx.offset, v);
  const auto hess = kn::serial::hessian(fx.basis, fx.grid.weights(), v, p, 0.0);
  for (size_t k = 0; k < 2 * m; k += 3) {
    auto yp = y, ym = y;
    const cplx step = k < m ? cplx(h, 0.0) : cplx(0.0, h);
    yp[k % m] += step;
    ym[k % m] -= step;
    const Eigen::VectorXd col = (gradient(yp) - gradient(ym)) / (2.0 * h);
    CHECK((col - hess.col(static_cast<Eigen::Index>(k))).cwiseAbs().maxCoeff() <
          1e-5 * (1.0 + hess.cwiseAbs().maxCoeff()));
  }
}
