#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "inflab/errors.hpp"
#include "inflab/geometry.hpp"

using namespace inflab;

TEST(Toroidal, ChartCenterAndAxes) {
  const double nu = 8, mu = 64;
  auto c = to_toroidal({0, 1 / nu, 0}, nu);
  EXPECT_EQ(c.pt.rho, 0.0);
  EXPECT_EQ(c.pt.phi, 0.0);
  c = to_toroidal({0, 1 / nu + 0.5 / mu, 0}, nu);
  EXPECT_NEAR(c.pt.rho, 0.5 / mu, 1e-16);
  EXPECT_EQ(c.pt.phi, 0.0);
  c = to_toroidal({0, 1 / nu, 1.25 / mu}, nu);
  EXPECT_NEAR(c.pt.rho, 1.25 / mu, 1e-16);
  EXPECT_NEAR(c.pt.phi, M_PI / 2, 1e-15);
  EXPECT_TRUE(c.chart_ok);
  EXPECT_FALSE(to_toroidal({0, 0.0, 0}, nu).chart_ok);
}

TEST(Toroidal, RoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rho(1e-3, 0.1), phi(-M_PI, M_PI);
  for (int i = 0; i < 1000; ++i) {
    const TorPoint p{rho(rng), phi(rng)};
    const auto back = to_toroidal(from_toroidal(p, 8.0, 0.3), 8.0);
    EXPECT_NEAR(back.pt.rho, p.rho, 1e-15);
    EXPECT_NEAR(back.pt.phi, p.phi, 1e-12);
  }
}

TEST(Cylindrical, RoundTrip) {
  const Vec3 x{-0.3, 0.4, 1.1};
  const Vec3 y = to_cartesian(to_cylindrical(x));
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(y[a], x[a], 1e-15);
  EXPECT_NEAR(to_cylindrical(x).r, 0.5, 1e-15);
}

TEST(Frames, KnownAngles) {
  Frames f = frames({0, 1, 0});
  EXPECT_NEAR(f.e_theta[1], 1, 1e-15);
  EXPECT_NEAR(f.e_r[0], 1, 1e-15);
  EXPECT_EQ(f.e_z[2], 1.0);
  f = frames({M_PI / 2, 1, 0});
  EXPECT_NEAR(f.e_theta[0], -1, 1e-15);
  EXPECT_NEAR(f.e_r[1], 1, 1e-15);
  for (double th : {0.1, 1.7, 4.0}) {
    f = frames({th, 2, 0});
    const auto norm = [](const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); };
    EXPECT_NEAR(norm(f.e_theta), 1, 1e-15);
    EXPECT_NEAR(norm(f.e_r), 1, 1e-15);
    EXPECT_NEAR(f.e_theta[0] * f.e_r[0] + f.e_theta[1] * f.e_r[1], 0, 1e-16);
  }
  EXPECT_THROW(frames({0, 0, 0}), AxisError);
}

TEST(Frames, CylToCartesianMatchesFrames) {
  const double th = 0.9;
  const Frames f = frames({th, 1, 0});
  const Vec3 v = cyl_to_cartesian(th, 2.0, -1.0, 0.5);
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(v[a], 2.0 * f.e_theta[a] - 1.0 * f.e_r[a] + 0.5 * f.e_z[a], 1e-15);
}

TEST(TorusGradient, RadialCoordinate) {
  TorusPartials p(1);
  p(0, 0) = 0.5;
  p(1, 0) = 1;
  const GradientInfo g = grad_from_torus(p, {0.5, 0.3}, 1);
  EXPECT_NEAR(g.grad_norm, 1.0, 1e-15);
}

TEST(TorusGradient, AngleHasInverseRadiusGradient) {
  const double rho = 2, phi = 0.4;
  TorusPartials p(1);
  p(0, 0) = phi;
  p(0, 1) = 1;
  const GradientInfo g = grad_from_torus(p, {rho, phi}, 1);
  EXPECT_NEAR(g.grad_norm, 0.5, 1e-15);
  // Finite differences of atan2 on the (dr, z) plane.
  const double r = rho * std::cos(phi), z = rho * std::sin(phi), h = 1e-6;
  const double dr = (std::atan2(z, r + h) - std::atan2(z, r - h)) / (2 * h);
  const double dz = (std::atan2(z + h, r) - std::atan2(z - h, r)) / (2 * h);
  EXPECT_NEAR(g.d_r, dr, 1e-9);
  EXPECT_NEAR(g.d_z, dz, 1e-9);
}

TEST(TorusGradient, BoundDominatesExact) {
  const double phi = 0.7;
  TorusPartials p(1);
  p(0, 0) = std::sin(phi);
  p(0, 1) = std::cos(phi);
  const GradientInfo g = grad_from_torus(p, {1.0, phi}, 1);
  EXPECT_NEAR(g.bound, std::fabs(std::cos(phi)) + std::fabs(std::sin(phi)), 1e-15);
  EXPECT_NEAR(g.grad_norm, std::fabs(std::cos(phi)), 1e-15);
  EXPECT_GE(g.bound, g.grad_norm);
}

TEST(TorusGradient, Errors) {
  TorusPartials p(1);
  EXPECT_THROW(grad_from_torus(p, {0.0, 0.0}, 1), DomainError);
  EXPECT_THROW(grad_from_torus(p, {1.0, 0.0}, 2), OrderError);
  EXPECT_THROW(p(2, 0), OrderError);
}
