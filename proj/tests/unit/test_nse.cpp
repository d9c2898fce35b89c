#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "inflab/errors.hpp"
#include "inflab/nse.hpp"

using namespace inflab;

namespace {

CartGrid periodic(int n) {
  CartGrid g;
  g.n = {n, n, n};
  g.L = {2 * M_PI, 2 * M_PI, 2 * M_PI};
  return g;
}

template <class F>
SpectralField vector_field(const CartGrid& g, F&& f) {
  SpectralField out = SpectralField::zeros(g, 3);
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j)
      for (int k = 0; k < g.n[2]; ++k) {
        const Vec3 v = f(g.coord(0, i), g.coord(1, j), g.coord(2, k));
        const std::size_t idx = (static_cast<std::size_t>(i) * g.n[1] + j) * g.n[2] + k;
        for (int c = 0; c < 3; ++c) out.components[c][idx] = v[c];
      }
  return out;
}

SpectralField taylor_green_2d(const CartGrid& g, double t) {
  const double d = std::exp(-2 * t);
  return vector_field(g, [&](double x, double y, double) {
    return Vec3{d * std::sin(x) * std::cos(y), -d * std::cos(x) * std::sin(y), 0.0};
  });
}

SpectralField taylor_green_3d(const CartGrid& g) {
  return vector_field(g, [](double x, double y, double z) {
    return Vec3{std::sin(x) * std::cos(y) * std::cos(z), -std::cos(x) * std::sin(y) * std::cos(z), 0.0};
  });
}

double l2_difference(const SpectralField& a, const SpectralField& b) {
  double acc = 0;
  for (int c = 0; c < a.ncomp(); ++c)
    for (std::size_t i = 0; i < a.components[c].size(); ++i) {
      const double d = a.components[c][i] - b.components[c][i];
      acc += d * d;
    }
  return std::sqrt(acc * a.grid.cell_volume());
}

}  // namespace

TEST(Projection, AnnihilatesGradients) {
  const CartGrid g = periodic(16);
  // grad of sin(x) cos(2y) sin(z).
  const SpectralField grad = vector_field(g, [](double x, double y, double z) {
    return Vec3{std::cos(x) * std::cos(2 * y) * std::sin(z), -2 * std::sin(x) * std::sin(2 * y) * std::sin(z),
                std::sin(x) * std::cos(2 * y) * std::cos(z)};
  });
  EXPECT_LT(project_div_free(grad).max_abs(), 1e-14);
}

TEST(Projection, IdempotentOnSolenoidalFields) {
  const SpectralField u = taylor_green_3d(periodic(16));
  EXPECT_LT(l2_difference(project_div_free(u), u), 1e-14);
}

TEST(Projection, RandomFieldBecomesSolenoidal) {
  const CartGrid g = periodic(16);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n01;
  SpectralField u = SpectralField::zeros(g, 3);
  for (auto& c : u.components)
    for (auto& v : c) v = n01(rng);
  EXPECT_GT(divergence_residual(u), 0.1);
  EXPECT_LT(divergence_residual(project_div_free(u)), 1e-12);
}

TEST(Curl, OfShearFlow) {
  const CartGrid g = periodic(16);
  const SpectralField u = vector_field(g, [](double, double, double z) { return Vec3{std::sin(2 * z), 0, 0}; });
  const SpectralField w = curl(u);
  // curl (sin 2z, 0, 0) = (0, 2 cos 2z, 0).
  const SpectralField ref = vector_field(g, [](double, double, double z) { return Vec3{0, 2 * std::cos(2 * z), 0}; });
  EXPECT_LT(l2_difference(w, ref), 1e-12);
}

TEST(NseSolver, ZeroStaysZero) {
  NseSolver s(periodic(8));
  s.set_state(SpectralField::zeros(periodic(8)));
  for (int i = 0; i < 3; ++i) s.step(1e-2);
  EXPECT_EQ(s.state().max_abs(), 0.0);
}

TEST(NseSolver, TaylorGreenDecay) {
  const CartGrid g = periodic(64);
  NseSolver s(g);
  s.set_state(taylor_green_2d(g, 0.0));
  for (int i = 0; i < 100; ++i) s.step(1e-3);
  EXPECT_NEAR(s.time(), 0.1, 1e-12);
  EXPECT_LT(l2_difference(s.state(), taylor_green_2d(g, 0.1)), 1e-8);
}

TEST(NseSolver, SingleModeDecaysViscously) {
  const CartGrid g = periodic(16);
  NseSolver s(g);
  s.set_state(vector_field(g, [](double, double, double z) { return Vec3{std::sin(3 * z), 0, 0}; }));
  for (int i = 0; i < 50; ++i) s.step(2e-3);
  const double d = std::exp(-9 * 0.1);
  const SpectralField ref = vector_field(g, [&](double, double, double z) { return Vec3{d * std::sin(3 * z), 0, 0}; });
  EXPECT_LT(l2_difference(s.state(), ref), 1e-12);
}

TEST(NseSolver, EnergyBalanceDivergenceAndMomentum) {
  const CartGrid g = periodic(32);
  NseSolver s(g);
  SpectralField u = taylor_green_3d(g);
  for (auto& v : u.components[0]) v += 0.3;
  s.set_state(u);
  const auto m0 = s.mean();
  for (int i = 0; i < 20; ++i) {
    const StepDiagnostics d = s.step(5e-3, true);
    EXPECT_LT(d.balance_residual, 1e-9) << i;
    EXPECT_LT(divergence_residual(s.state()), 1e-11);
  }
  const auto m1 = s.mean();
  for (int c = 0; c < 3; ++c) EXPECT_LT(std::abs(m1[c] - m0[c]), 1e-13);
}

TEST(NseSolver, SpectralConvergence) {
  const auto run = [](int n) {
    NseSolver s(periodic(n));
    SpectralField u = taylor_green_3d(periodic(n));
    for (auto& c : u.components)
      for (auto& v : c) v *= 4;
    s.set_state(u);
    for (int i = 0; i < 50; ++i) s.step(2e-3);
    return s.state();
  };
  const SpectralField ref = run(64);
  const auto err = [&](int n) {
    const SpectralField coarse = run(n);
    // Compare Fourier coefficients on the coarse lattice via the energy of the difference.
    SpectralField fine = SpectralField::zeros(periodic(n), 3);
    const int stride = 64 / n;
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            fine.components[c][(static_cast<std::size_t>(i) * n + j) * n + k] =
                ref.components[c][(static_cast<std::size_t>(i * stride) * 64 + j * stride) * 64 + k * stride];
    return l2_difference(coarse, fine);
  };
  const double e8 = err(8), e16 = err(16);
  EXPECT_GT(e8 / e16, 100.0);
}

TEST(NseSolver, BlowupGuard) {
  const CartGrid g = periodic(16);
  NseSolver s(g);
  s.set_state(taylor_green_3d(g));
  s.blowup_factor = 0.5;
  EXPECT_THROW(s.step(1e-3), BlowupError);
}

namespace {

SolveSpec tiny_solve() {
  SolveSpec spec;
  spec.t_end = 1e-9;
  spec.dt = 1e-9;
  spec.probes = {0.0};
  spec.besov_probes = false;
  return spec;
}

}  // namespace

TEST(Solve, UnresolvedDatumIsRefused) {
  RawParameters r;
  r.mu = 8;
  r.eps = 1e-4;
  EXPECT_THROW(solve_and_compare(ApproxSolution(validate(r)), tiny_solve()), AliasError);
}

TEST(Solve, FlowMapIsContinuousAtSmallTime) {
  RawParameters r;
  r.mu = 8;
  r.eps = 1e-4;
  const ApproxSolution sol(validate(r));
  SolveSpec spec = tiny_solve();
  spec.alias_check = false;
  const SolveTrace tr = solve_and_compare(sol, spec);
  ASSERT_EQ(tr.probes.size(), 2u);
  // w(0) is the part of the sampled datum the projection removes; one tiny step must not move it.
  const ProbeRecord& p0 = tr.probes.front();
  const ProbeRecord& p1 = tr.probes.back();
  EXPECT_GT(p1.l2_ubar, 0.0);
  EXPECT_LE(std::fabs(p1.l2_w - p0.l2_w), 1e-6 * p1.l2_ubar);
}

TEST(Solve, RefusesOverMemoryCap) {
  RawParameters r;
  r.mu = 8;
  const ApproxSolution sol(validate(r));
  SolveSpec spec;
  spec.t_end = 0.1 * sol.params().t_star();
  spec.memory_cap_bytes = 1e3;
  EXPECT_THROW(solve_and_compare(sol, spec), ResolutionError);
  spec.memory_cap_bytes = 3e9;
  spec.t_end = 2 * sol.params().t_star();
  EXPECT_THROW(solve_and_compare(sol, spec), RangeError);
}
