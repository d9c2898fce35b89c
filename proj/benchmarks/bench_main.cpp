#include <benchmark/benchmark.h>

#include <cmath>

#include "inflab/approx_solution.hpp"
#include "inflab/norms.hpp"
#include "inflab/nse.hpp"
#include "inflab/profiles.hpp"

using namespace inflab;

namespace {

CartGrid cube(int n, double L) {
  CartGrid g;
  g.n = {n, n, n};
  g.L = {L, L, L};
  return g;
}

SpectralField bump_field(const CartGrid& g) {
  SpectralField f = SpectralField::zeros(g, 1);
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j)
      for (int k = 0; k < g.n[2]; ++k) {
        const double x = g.coord(0, i), y = g.coord(1, j), z = g.coord(2, k);
        f.components[0][(static_cast<std::size_t>(i) * g.n[1] + j) * g.n[2] + k] =
            std::exp(-(x * x + y * y + z * z)) * std::cos(3 * x);
      }
  return f;
}

}  // namespace

static void BM_ProfileJet(benchmark::State& state) {
  const Profile f = make_f(2);
  const int order = static_cast<int>(state.range(0));
  double x = 0.6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.jet(x, 1, order));
    x = x > 1.9 ? 0.6 : x + 1e-3;
  }
}
BENCHMARK(BM_ProfileJet)->Arg(2)->Arg(6)->Arg(12);

static void BM_VelocityPoint(benchmark::State& state) {
  const ApproxSolution sol(validate(RawParameters{}));
  const double t = 0.5 * sol.params().t_star();
  double phi = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sol.velocity(t, {1.3 / 64, phi}));
    phi += 0.01;
  }
}
BENCHMARK(BM_VelocityPoint);

static void BM_BesovShells(benchmark::State& state) {
  const SpectralField f = bump_field(cube(static_cast<int>(state.range(0)), 12.0));
  BesovOptions o;
  o.check = false;
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(f, 0.5, Exponent::finite(2), Exponent::infinity(), o));
}
BENCHMARK(BM_BesovShells)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SolverStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CartGrid g = cube(n, 2 * M_PI);
  SpectralField u = SpectralField::zeros(g, 3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double x = g.coord(0, i), y = g.coord(1, j), z = g.coord(2, k);
        const std::size_t idx = (static_cast<std::size_t>(i) * n + j) * n + k;
        u.components[0][idx] = std::sin(x) * std::cos(y) * std::cos(z);
        u.components[1][idx] = -std::cos(x) * std::sin(y) * std::cos(z);
      }
  NseSolver solver(g);
  solver.set_state(u);
  for (auto _ : state) benchmark::DoNotOptimize(solver.step(1e-3));
}
BENCHMARK(BM_SolverStep)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
