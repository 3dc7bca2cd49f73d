// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "bergman/kernels.h"
#include "bergman/quadrature.h"

using namespace bergman;
namespace kn = bergman::kernels;

namespace {

struct Setup {
  DiskGrid grid;
  kn::NodeMatrix basis;
  std::vector<cplx> coeffs, f, u, proj;

  explicit Setup(int n) : grid(make_disk_grid(n, Exponent(1.5))) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    basis = kn::power_table(grid.nodes(), n);
    coeffs.resize(static_cast<size_t>(n + 1));
    for (auto& c : coeffs) c = {unit(rng), unit(rng)};
    f.resize(grid.size());
    u.resize(grid.size());
    proj.resize(coeffs.size());
    kn::serial::evaluate(basis, coeffs, {}, f);
  }
};

Setup& setup(int n) {
  static std::vector<std::unique_ptr<Setup>> cache(64);
  if (!cache[n]) cache[n] = std::make_unique<Setup>(n);
  return *cache[n];
}

template <bool Parallel>
void BM_Evaluate(benchmark::State& state) {
  auto& s = setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) kn::parallel::evaluate(s.basis, s.coeffs, {}, s.f);
    else kn::serial::evaluate(s.basis, s.coeffs, {}, s.f);
    benchmark::DoNotOptimize(s.f.data());
  }
}

template <bool Parallel>
void BM_Gradient(benchmark::State& state) {
  auto& s = setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kn::parallel::dual_weights(s.grid.weights(), s.f, 1.5, s.u);
      kn::parallel::project(s.basis, s.u, s.proj);
    } else {
      kn::serial::dual_weights(s.grid.weights(), s.f, 1.5, s.u);
      kn::serial::project(s.basis, s.u, s.proj);
    }
    benchmark::DoNotOptimize(s.proj.data());
  }
}

template <bool Parallel>
void BM_Hessian(benchmark::State& state) {
  auto& s = setup(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto h = Parallel ? kn::parallel::hessian(s.basis, s.grid.weights(), s.f, 1.5, 1e-8)
                      : kn::serial::hessian(s.basis, s.grid.weights(), s.f, 1.5, 1e-8);
    benchmark::DoNotOptimize(h.data());
  }
}

}  // namespace

BENCHMARK(BM_Evaluate<false>)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate<true>)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gradient<false>)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gradient<true>)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hessian<false>)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hessian<true>)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
