#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "inflab/approx_solution.hpp"
#include "inflab/errors.hpp"
#include "inflab/norms.hpp"

using namespace inflab;

namespace {

ParameterSet desk(double s = 0.25, double eps = 0.5, double mu = 64) {
  RawParameters r;
  r.s = s;
  r.eps = eps;
  r.mu = mu;
  return validate(r);
}

Vec3 cart_value(const ApproxSolution& sol, double t, const Vec3& x, Quantity q) {
  const CylPoint cp = to_cylindrical(x);
  const Vec3 v = sol.point_value(t, cp, q);
  return cyl_to_cartesian(cp.theta, v[0], v[1], v[2]);
}

Vec3 shifted(Vec3 x, int axis, double d) {
  x[axis] += d;
  return x;
}

/// Sixth-order central second derivative along `axis`.
Vec3 second_difference(const std::function<Vec3(const Vec3&)>& F, const Vec3& x, int axis, double h) {
  static const double w[7] = {2, -27, 270, -490, 270, -27, 2};
  Vec3 out{0, 0, 0};
  for (int k = -3; k <= 3; ++k) {
    const Vec3 v = F(shifted(x, axis, k * h));
    for (int a = 0; a < 3; ++a) out[a] += w[k + 3] * v[a];
  }
  for (auto& o : out) o /= 180 * h * h;
  return out;
}

/// Sixth-order central first derivative along `axis`.
Vec3 first_difference(const std::function<Vec3(const Vec3&)>& F, const Vec3& x, int axis, double h) {
  static const double w[7] = {-1, 9, -45, 0, 45, -9, 1};
  Vec3 out{0, 0, 0};
  for (int k = -3; k <= 3; ++k) {
    if (k == 0) continue;
    const Vec3 v = F(shifted(x, axis, k * h));
    for (int a = 0; a < 3; ++a) out[a] += w[k + 3] * v[a];
  }
  for (auto& o : out) o /= 60 * h;
  return out;
}

/// Composite Simpson on 2^17 panels.
double simpson(const std::function<double(double)>& f, double a, double b) {
  const int n = 1 << 17;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4 : 2) * f(a + i * h);
  return acc * h / 3;
}

}  // namespace

TEST(ApproxSolution, VanishesOutsideSupport) {
  const ApproxSolution sol(desk());
  const Vec3 v = sol.velocity(0.0, {3.0 / 64, 0.4});
  EXPECT_EQ(v[0], 0.0);
  EXPECT_EQ(v[1], 0.0);
  EXPECT_EQ(v[2], 0.0);
  const Vec3 e = sol.eval_error(0.5 * sol.params().t_star(), {0.3 / 64, 1.0});
  EXPECT_EQ(e[0], 0.0);
  EXPECT_EQ(e[1], 0.0);
  EXPECT_EQ(e[2], 0.0);
}

TEST(ApproxSolution, VortexOnThePlateau) {
  const ApproxSolution sol(desk());
  const double A = sol.amplitude(), mu = 64, nu = 8;
  StationaryVelocity v = sol.eval_ur_uz({1.25 / mu, 0.0});
  EXPECT_NEAR(v.u_r, 0.0, 1e-15 * A);
  EXPECT_NEAR(v.u_zp, A, 1e-13 * A);
  v = sol.eval_ur_uz({1.2 / mu, M_PI / 2});
  EXPECT_NEAR(v.u_r, -A, 1e-13 * A);
  EXPECT_NEAR(v.u_zp, 0.0, 1e-13 * A);
  // r = 1/nu at phi = pi/2 and f(1.2) = 1.2.
  EXPECT_NEAR(v.u_zc, A / mu * 1.2 * nu, 1e-12 * A);
}

TEST(ApproxSolution, SwirlIsTransportedByTheShear) {
  const ApproxSolution sol(desk());
  const ParameterSet& ps = sol.params();
  const double A = sol.amplitude();
  EXPECT_NEAR(sol.eval_swirl(0.0, {1.25 / 64, 0.0}), 0.0, 1e-15 * A);
  EXPECT_NEAR(sol.eval_swirl(0.0, {1.25 / 64, M_PI / 2}), A, 1e-13 * A);
  for (double x : {1.1, 1.25, 1.4}) {
    const double rho = x / 64;
    const double zeta = ps.zeta_scale() / rho;
    const double phi = 0.3;
    EXPECT_NEAR(sol.eval_swirl(ps.t_star(), {rho, phi}), A * make_g().eval(x, 0) * std::sin(phi - zeta), 1e-9 * A)
        << x;
  }
}

TEST(ApproxSolution, AngularVelocity) {
  const ApproxSolution sol(desk());
  const double rho = 1.3 / 64;
  EXPECT_NEAR(sol.angular_velocity(rho), sol.amplitude() / rho, 1e-12 * sol.amplitude() / rho);
}

TEST(ApproxSolution, PressureAgainstQuadrature) {
  const ApproxSolution sol(desk());
  const double mu = 64, A2 = sol.amplitude() * sol.amplitude();
  const Profile f = make_f(2);
  const auto integrand = [&](double x) {
    const double d = f.eval(x, 1);
    return d * d / x;
  };
  EXPECT_EQ(sol.pressure(0.4 / mu), 0.0);
  const double total = simpson(integrand, 0.5, 2.0);
  EXPECT_NEAR(sol.pressure(2.5 / mu) / (A2 * total), 1.0, 1e-10);
  EXPECT_EQ(sol.pressure(2.5 / mu), sol.pressure(3.0 / mu));
  for (double x : {0.7, 1.0, 1.25, 1.58, 1.93}) {
    const double ref = simpson(integrand, 0.5, x);
    EXPECT_NEAR(sol.pressure(x / mu) / A2, ref, 1e-10 * std::max(1.0, ref)) << x;
  }
}

TEST(ApproxSolution, DivergenceFreeAtRandomPoints) {
  const ApproxSolution sol(desk());
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(0.5, 2.0), phi(0, 2 * M_PI), t(0, sol.params().t_star());
  for (int i = 0; i < 500; ++i) {
    const DivergenceCheck d = sol.divergence(t(rng), {x(rng) / 64, phi(rng)});
    EXPECT_LT(std::fabs(d.residual), 1e-10 * d.gradient_scale);
  }
}

TEST(ApproxSolution, StationaryVortexBalancesPressure) {
  const ApproxSolution sol(desk());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(0.5, 2.0), phi(0, 2 * M_PI);
  for (int i = 0; i < 100; ++i) {
    const StationaryResidual r = sol.stationary_residual({x(rng) / 64, phi(rng)});
    EXPECT_LT(std::hypot(r.r, r.z), 1e-8 * r.scale);
  }
}

TEST(ApproxSolution, ViscousErrorIsMinusLaplacian) {
  const ApproxSolution sol(desk());
  const double t = 0.5 * sol.params().t_star(), mu = 64, h = 2e-3 / mu;
  const auto U = [&](const Vec3& x) { return cart_value(sol, t, x, Quantity::Velocity); };
  for (double phi : {0.4, 2.0, 4.5}) {
    const CylPoint cp = from_toroidal({1.3 / mu, phi}, sol.params().nu(), 0.6);
    const Vec3 x = to_cartesian(cp);
    Vec3 lap{0, 0, 0};
    for (int axis = 0; axis < 3; ++axis) {
      const Vec3 d2 = second_difference(U, x, axis, h);
      for (int a = 0; a < 3; ++a) lap[a] += d2[a];
    }
    const Vec3 ev = cart_value(sol, t, x, Quantity::ErrorViscous);
    const double scale = std::sqrt(lap[0] * lap[0] + lap[1] * lap[1] + lap[2] * lap[2]);
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(-ev[a], lap[a], 1e-5 * scale) << "phi=" << phi << " a=" << a;
  }
}

TEST(ApproxSolution, VorticityIsTheCurl) {
  const ApproxSolution sol(desk());
  const double t = 0.25 * sol.params().t_star(), mu = 64, h = 2e-3 / mu;
  const auto U = [&](const Vec3& x) { return cart_value(sol, t, x, Quantity::Velocity); };
  const Vec3 x = to_cartesian(from_toroidal({1.2 / mu, 1.0}, sol.params().nu(), 0.2));
  Vec3 J[3];
  for (int axis = 0; axis < 3; ++axis) J[axis] = first_difference(U, x, axis, h);
  const Vec3 curl{J[1][2] - J[2][1], J[2][0] - J[0][2], J[0][1] - J[1][0]};
  const Vec3 w = cart_value(sol, t, x, Quantity::Vorticity);
  const double scale = std::sqrt(curl[0] * curl[0] + curl[1] * curl[1] + curl[2] * curl[2]);
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(w[a], curl[a], 1e-6 * scale) << a;
}

TEST(ApproxSolution, TimeDerivativeOfSwirl) {
  const ApproxSolution sol(desk(-0.5));
  const double t = 0.4 * sol.params().t_star(), h = 1e-4 * sol.params().t_star();
  const TorPoint pt{1.2 / 64, 0.8};
  const double fd = (sol.eval_swirl(t + h, pt) - sol.eval_swirl(t - h, pt)) / (2 * h);
  EXPECT_NEAR(sol.eval_swirl_dt(t, pt), fd, 1e-6 * std::fabs(fd) + 1e-12);
}

TEST(ApproxSolution, NegativeBranchUnmixesAtCriticalTime) {
  const ApproxSolution sol(desk(-0.5));
  const double ts = sol.params().t_star();
  for (double x : {1.1, 1.3})
    EXPECT_NEAR(sol.net_shear(ts, x / 64), 0.0, 1e-9 * std::fabs(sol.net_shear(0.0, x / 64))) << x;
}

TEST(ApproxSolution, GridMaxMatchesDenseScan) {
  const ApproxSolution sol(desk());
  const AxiField f = sol.sample(0.0, sol.support_grid(32));
  const double grid_max = lebesgue_norm(f, Exponent::infinity());
  double dense = 0;
  for (int i = 1; i < 4000; ++i) {
    const double rho = (0.5 + 1.5 * i / 4000.0) / 64;
    for (int j = 0; j < 64; ++j) {
      const Vec3 v = sol.velocity(0.0, {rho, 2 * M_PI * j / 64});
      dense = std::max(dense, std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
    }
  }
  EXPECT_NEAR(grid_max / dense, 1.0, 1e-3);
}

TEST(ApproxSolution, ChartNeedsAnisotropy) {
  RawParameters r;
  r.b = 0.025;
  const ApproxSolution sol(validate(r));
  EXPECT_FALSE(sol.chart_valid());
  EXPECT_THROW(sol.require_chart(), ChartError);
  EXPECT_TRUE(ApproxSolution(desk()).chart_valid());
}

TEST(ApproxSolution, SamplingNeedsResolution) {
  const ApproxSolution sol(desk());
  AxiGrid coarse = sol.support_grid(32);
  coarse.dr *= 4;
  coarse.dz *= 4;
  EXPECT_THROW(sol.sample(0.0, coarse), ResolutionError);
}

TEST(ApproxSolution, FftFriendlySizes) {
  EXPECT_EQ(fft_friendly_size(127), 128);
  EXPECT_EQ(fft_friendly_size(97), 98);
  EXPECT_EQ(fft_friendly_size(121), 126);
}
