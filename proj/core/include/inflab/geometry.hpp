#pragma once

#include <array>
#include <vector>

namespace inflab {

using Vec3 = std::array<double, 3>;

/// Cylindrical point (theta, r, z).
struct CylPoint {
  double theta = 0, r = 0, z = 0;
};

/// Shifted polar point in the rz half-plane, centered on the circle r = 1/nu, z = 0.
struct TorPoint {
  double rho = 0, phi = 0;
};

struct ToroidalResult {
  TorPoint pt;
  /// False when rho >= 1/nu, where the chart stops covering the half-plane.
  bool chart_ok = true;
};

ToroidalResult to_toroidal(const CylPoint& pt, double nu);
/// r = 1/nu + rho cos phi, z = rho sin phi.
CylPoint from_toroidal(const TorPoint& pt, double nu, double theta = 0.0);

CylPoint to_cylindrical(const Vec3& x);
Vec3 to_cartesian(const CylPoint& pt);

struct Frames {
  Vec3 e_theta, e_r, e_z;
};
/// Orthonormal cylindrical frame. Throws AxisError at r <= 0.
Frames frames(const CylPoint& pt);

/// Cartesian vector from cylindrical components (u_theta, u_r, u_z) at angle theta.
Vec3 cyl_to_cartesian(double theta, double u_theta, double u_r, double u_z);

/// partial(i, j) = d_rho^i d_phi^j F, stored for i + j <= order.
class TorusPartials {
public:
  explicit TorusPartials(int order);
  int order() const { return order_; }
  double& operator()(int i, int j);
  double operator()(int i, int j) const;

private:
  int order_;
  std::vector<double> data_;
};

struct GradientInfo {
  /// sum_{0 <= i + j <= k} rho^{-(k - i)} |d_rho^i d_phi^j F|.
  double bound = 0;
  /// Exact (dF/dr, dF/dz) from the first-order partials.
  double d_r = 0, d_z = 0;
  double grad_norm = 0;
};

/// Throws DomainError at rho <= 0 and OrderError when k exceeds partials.order().
GradientInfo grad_from_torus(const TorusPartials& partials, const TorPoint& pt, int k);

}  // namespace inflab
