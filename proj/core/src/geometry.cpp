#include "inflab/geometry.hpp"

#include <cmath>

#include "inflab/errors.hpp"

namespace inflab {

ToroidalResult to_toroidal(const CylPoint& pt, double nu) {
  const double dr = pt.r - 1.0 / nu;
  ToroidalResult out;
  out.pt.rho = std::hypot(dr, pt.z);
  out.pt.phi = out.pt.rho == 0.0 ? 0.0 : std::atan2(pt.z, dr);
  out.chart_ok = out.pt.rho < 1.0 / nu;
  return out;
}

CylPoint from_toroidal(const TorPoint& pt, double nu, double theta) {
  return {theta, 1.0 / nu + pt.rho * std::cos(pt.phi), pt.rho * std::sin(pt.phi)};
}

CylPoint to_cylindrical(const Vec3& x) {
  double theta = std::atan2(x[1], x[0]);
  if (theta < 0) theta += 2.0 * M_PI;
  return {theta, std::hypot(x[0], x[1]), x[2]};
}

Vec3 to_cartesian(const CylPoint& pt) {
  return {pt.r * std::cos(pt.theta), pt.r * std::sin(pt.theta), pt.z};
}

Frames frames(const CylPoint& pt) {
  if (!(pt.r > 0.0)) throw AxisError("cylindrical frame is undefined on the axis r = 0");
  const double c = std::cos(pt.theta), s = std::sin(pt.theta);
  return {{-s, c, 0.0}, {c, s, 0.0}, {0.0, 0.0, 1.0}};
}

Vec3 cyl_to_cartesian(double theta, double u_theta, double u_r, double u_z) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {u_r * c - u_theta * s, u_r * s + u_theta * c, u_z};
}

TorusPartials::TorusPartials(int order) : order_(order), data_((order + 1) * (order + 1), 0.0) {}

double& TorusPartials::operator()(int i, int j) {
  if (i < 0 || j < 0 || i + j > order_) throw OrderError("torus partial index out of range");
  return data_[i * (order_ + 1) + j];
}

double TorusPartials::operator()(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) throw OrderError("torus partial index out of range");
  return data_[i * (order_ + 1) + j];
}

GradientInfo grad_from_torus(const TorusPartials& partials, const TorPoint& pt, int k) {
  if (!(pt.rho > 0.0)) throw DomainError("grad_from_torus at rho = 0");
  if (k < 0 || k > partials.order()) throw OrderError("grad_from_torus: k exceeds available partials");
  GradientInfo g;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; i + j <= k; ++j) g.bound += std::pow(pt.rho, -(k - i)) * std::fabs(partials(i, j));
  if (partials.order() >= 1) {
    const double c = std::cos(pt.phi), s = std::sin(pt.phi);
    const double fr = partials(1, 0), fp = partials(0, 1) / pt.rho;
    g.d_r = c * fr - s * fp;
    g.d_z = s * fr + c * fp;
    g.grad_norm = std::hypot(g.d_r, g.d_z);
  }
  return g;
}

}  // namespace inflab
