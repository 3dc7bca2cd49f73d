#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bergman/certify.h"
#include "bergman/json_io.h"
#include "oracles.h"

using namespace bergman;

TEST_CASE("extremality residual examples") {
  {
    const KernelFunctional phi(Poly{1.0}, Exponent(3.0));
    const auto cert = extremality_residual(Poly{1.0}, phi, 1.0, 4, make_disk_grid(4, phi.exponent()));
    REQUIRE(cert.residuals.size() == 5);
    CHECK(cert.max_residual < 1e-14);
  }
  {
    const KernelFunctional phi(Poly{0.0, 1.0}, Exponent(2.0));
    const auto cert = extremality_residual(Poly{0.0, std::numbers::sqrt2}, phi, std::numbers::sqrt2 / 2.0, 5,
                                           make_disk_grid(5, phi.exponent()));
    CHECK(cert.max_residual < 1e-10);
  }
  {
    // The normalized kernel is not extremal for p != 2.
    const Exponent p(4.0);
    const KernelFunctional phi(Poly{1.0, 1.0}, p);
    const DiskGrid grid = make_disk_grid(4, p);
    const Poly g{1.0, 1.0};
    const Poly guess = (1.0 / ap_norm(g, p, grid)) * g;
    const auto sol = solve(phi, 4, grid);
    const auto bad = extremality_residual(guess, phi, apply(phi, guess).real(), 4, grid);
    const auto good = extremality_residual(sol.f_hat, phi, sol.phi_norm_n, 4, grid);
    CHECK(bad.max_residual > 1e-3);
    CHECK(good.max_residual < 1e-7);
  }
}

TEST_CASE("certificate max equals the largest residual modulus") {
  const Exponent p(1.5);
  const KernelFunctional phi(Poly{cplx(0.2, 0.3), 1.0}, p);
  const DiskGrid grid = make_disk_grid(3, p);
  const auto cert = extremality_residual(Poly{0.4, cplx(0.1, 0.9)}, phi, 0.8, 3, grid);
  double m = 0.0;
  for (const auto& r : cert.residuals) m = std::max(m, std::abs(r));
  CHECK(cert.max_residual == m);
}

TEST_CASE("residual integrals match a brute-force rule") {
  const Exponent p(3.0);
  const Poly f{cplx(0.3, -0.2), cplx(0.8, 0.1), cplx(-0.4, 0.5)};
  const auto moments = dual_moments(f, p.p(), 3, make_disk_grid(3, p));
  for (int j = 0; j <= 3; ++j) {
    const cplx ref = oracle::brute_disk(
        [&](cplx z) {
          const cplx v = oracle::direct_sum(f, z);
          return std::pow(z, j) * std::abs(v) * std::conj(v);
        },
        1500, 1024);
    CHECK(std::abs(moments[j] - ref) < 1e-6);
  }
}

TEST_CASE("recover_functional examples") {
  const Exponent p3(3.0), p2(2.0);
  const auto psi = recover_functional(Poly{1.0}, p3, 3, make_disk_grid(3, p3));
  CHECK(std::abs(psi.moments[0] - 1.0) < 1e-13);
  for (int j = 1; j <= 3; ++j) CHECK(std::abs(psi.moments[j]) < 1e-14);

  const auto psi2 = recover_functional(Poly{0.0, 2.0}, p2, 3, make_disk_grid(3, p2));
  CHECK(std::abs(psi2.moments[1] - 0.5) < 1e-14);
  CHECK(std::abs(psi2.moments[0]) < 1e-14);
  CHECK(std::abs(psi2.moments[2]) < 1e-14);
  CHECK(std::abs(psi2(Poly{0.0, 2.0}) - 1.0) < 1e-14);

  const KernelFunctional phi(Poly{0.0, 1.0}, Exponent(4.0));
  const DiskGrid grid = make_disk_grid(3, phi.exponent());
  const auto sol = solve(phi, 3, grid);
  const auto psi4 = recover_functional(sol.f_star, phi.exponent(), 3, grid);
  for (int j = 0; j <= 3; ++j) CHECK(std::abs(psi4.moments[j] - apply_monomial(phi, j)) < 1e-7);

  CHECK_THROWS_AS(recover_functional(Poly{}, p3, 2, make_disk_grid(2, p3)), std::invalid_argument);
}

TEST_CASE("recovered functional evaluates to 1 at its element") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const Exponent p(1.3 + 0.5 * t);
    const Poly f = oracle::random_poly(1 + t % 5, rng);
    const auto psi = recover_functional(f, p, f.degree(), make_disk_grid(f.degree(), p));
    CHECK(std::abs(psi(f) - 1.0) < 1e-9);
  }
}

TEST_CASE("round trip and soundness on random problems") {
  std::mt19937_64 rng(13);
  const double ps[] = {1.3, 1.5, 2.0, 3.0, 4.0, 6.0};
  int detected = 0, total = 0;
  for (int t = 0; t < 12; ++t) {
    const Exponent p(ps[t % 6]);
    const int n = t < 6 ? 4 : 8;
    const KernelFunctional phi(oracle::random_poly(1 + t % 5, rng), p);
    const DiskGrid grid = make_disk_grid(n, p);
    const auto sol = solve(phi, n, grid);
    CHECK(extremality_residual(sol.f_hat, phi, sol.phi_norm_n, n, grid).max_residual <= 1e-7);
    const auto psi = recover_functional(sol.f_star, p, n, grid);
    for (int j = 0; j <= n; ++j) CHECK(std::abs(psi.moments[j] - apply_monomial(phi, j)) < 1e-7);

    // Move f_hat off the optimum along a direction with phi(h) = 0, renormalize.
    Poly h = oracle::random_poly(n, rng);
    const cplx a = apply(phi, h);
    h = h - (a / apply(phi, sol.f_hat)) * sol.f_hat;
    h = (1.0 / ap_norm(h, p, grid)) * h;
    Poly moved = sol.f_hat + 1e-2 * h;
    moved = (1.0 / ap_norm(moved, p, grid)) * moved;
    ++total;
    if (extremality_residual(moved, phi, sol.phi_norm_n, n, grid).max_residual > 1e-4) ++detected;
  }
  CHECK(detected >= total * 95 / 100);
}

TEST_CASE("ryabykh_check examples") {
  {
    const KernelFunctional phi(Poly{1.0}, Exponent(2.0));
    const auto sol = solve(phi, 3);
    const auto rep = ryabykh_check(sol, phi, {0.5, 0.9, 0.99, 1.0});
    CHECK(std::abs(rep.rhs - 1.0) < 1e-12);
    for (double l : rep.lhs) CHECK(std::abs(l - 1.0) < 1e-10);
    CHECK(std::abs(rep.slack) <= 1e-10);
  }
  {
    // p = 4, q = 4/3: ||g||_{H^q} = 1, G = z/2, ||G||_{H^q} = 1/2, phi_norm = 3^{1/4}/2.
    const double c = std::pow(3.0, 0.25);
    const double rhs = std::pow((2.0 * 1.0 + 1.0 * 0.5) / (0.5 * c), 1.0 / 3.0);
    const KernelFunctional phi(Poly{0.0, 1.0}, Exponent(4.0));
    const auto sol = solve(phi, 3);
    const auto rep = ryabykh_check(sol, phi, {0.5, 1.0});
    CHECK(std::abs(rep.rhs - rhs) < 1e-9);
    CHECK(std::abs(rep.lhs.back() - c) < 1e-8);
    CHECK(std::abs(rep.lhs.front() - 0.5 * c) < 1e-8);
    CHECK(rep.slack > 0.0);
  }
  {
    const KernelFunctional phi(Poly{1.0, 1.0}, Exponent(3.0));
    const auto rep = ryabykh_check(solve(phi, 8), phi, {0.5, 0.9, 0.99, 1.0});
    CHECK(rep.slack >= -1e-8);
  }
  const KernelFunctional phi(Poly{1.0}, Exponent(2.0));
  CHECK_THROWS(ryabykh_check(solve(phi, 1), phi, {0.0}));
}

TEST_CASE("minkowski_check") {
  auto [l1, r1] = minkowski_check(Poly{1.0}, 3.0);
  CHECK(std::abs(l1 - 1.0) < 1e-14);
  CHECK(std::abs(r1 - 1.0) < 1e-14);
  auto [l2, r2] = minkowski_check(Poly{0.0, 1.0}, 2.0);
  CHECK(std::abs(l2 - 0.5) < 1e-14);
  CHECK(std::abs(r2 - 1.0) < 1e-14);
  auto [l3, r3] = minkowski_check(Poly{1.0, 1.0, 1.0}, 4.0);
  CHECK(l3 < r3);
  const Poly big_g{1.0, 0.5, 1.0 / 3.0};
  CHECK(std::abs(l3 - oracle::brute_circle_mean(big_g, 4.0, 1.0, 512)) < 1e-12);
  CHECK(std::abs(r3 - oracle::brute_circle_mean(Poly{1.0, 1.0, 1.0}, 4.0, 1.0, 512)) < 1e-12);
  CHECK_THROWS(minkowski_check(Poly{1.0}, 1.0));
}

TEST_CASE("minkowski estimate on random kernels") {
  std::mt19937_64 rng(14);
  const double qs[] = {4.0 / 3.0, 2.0, 3.0, 4.0};
  for (int t = 0; t < 200; ++t) {
    const Poly g = oracle::random_poly(t % 13, rng);
    const auto [lhs, rhs] = minkowski_check(g, qs[t % 4]);
    CHECK(lhs <= rhs + 1e-10);
  }
}

TEST_CASE("certificate and report json") {
  const KernelFunctional phi(Poly{1.0}, Exponent(2.0));
  const auto sol = solve(phi, 1);
  const json c = extremality_residual(sol.f_hat, phi, sol.phi_norm_n, 1, make_disk_grid(1, phi.exponent()));
  CHECK(c.at("residuals").size() == 2);
  const auto rep = ryabykh_check(sol, phi, {0.5, 1.0});
  const json r = rep;
  CHECK(r.at("lhs").size() == 2);
  const std::string csv = bound_report_csv(rep);
  CHECK(csv.rfind("r,lhs,rhs\n0.5,", 0) == 0);
}
