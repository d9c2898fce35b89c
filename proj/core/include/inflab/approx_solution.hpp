#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "inflab/axi_field.hpp"
#include "inflab/geometry.hpp"
#include "inflab/mjet.hpp"
#include "inflab/params.hpp"
#include "inflab/profiles.hpp"
#include "inflab/spectral_field.hpp"

namespace inflab {

/// Stationary rz-velocity: the radial vortex (u_r, u_zp) and the divergence corrector u_zc.
struct StationaryVelocity {
  double u_r = 0, u_zp = 0, u_zc = 0;
};

/// Cylindrical 3-vectors are ordered (theta, r, z) throughout.
struct ErrorParts {
  Vec3 eulerian{}, viscous{}, total{};
};

/// Jets of the velocity components in some chart.
template <int NV, int D>
struct VelocityJets {
  MJet<NV, D> u_theta, u_r, u_zp, u_zc;
  MJet<NV, D> u_z() const { return u_zp + u_zc; }
};

/// Jets of the Cartesian velocity in (x, y, z).
struct CartesianJets {
  MJet<3, 2> u[3];
};

struct DivergenceCheck {
  double residual = 0;
  /// Frobenius norm of the rz velocity gradient at the point.
  double gradient_scale = 0;
};

struct StationaryResidual {
  /// (u_r d_r + u_zp d_z) u + grad p, r and z components.
  double r = 0, z = 0;
  /// sup over the support of |grad p| = A^2 mu max f'(x)^2 / x.
  double scale = 0;
};

/// Which field to put on a grid.
enum class Quantity { Velocity, VelocityDt, Error, ErrorEulerian, ErrorViscous, Vorticity, Pressure };

/// The explicit approximate solution: a stationary radial vortex in the rz
/// half-plane plus a swirl transported by it. For s > 0 the swirl starts as
/// A sin(phi) g(mu rho) and is mixed; for s < 0 it starts premixed and
/// un-mixes at t_star.
class ApproxSolution {
public:
  explicit ApproxSolution(const ParameterSet& params);

  const ParameterSet& params() const { return params_; }
  const Profile& f() const { return f_; }
  const Profile& g() const { return g_; }
  double amplitude() const { return A_; }
  /// Prefactor of the swirl: A for s > 0, eps^{-2+k0 N} mu^{2/p-s-k0} nu^{1/p} for s < 0.
  double swirl_amplitude() const { return amp_; }
  int branch() const { return params_.s() > 0 ? 1 : -1; }
  /// Every component vanishes for mu rho outside (1/2, 2).
  double rho_max() const { return 2.0 / params_.mu(); }
  double rho_min() const { return 0.5 / params_.mu(); }
  bool in_support(double rho) const;
  /// The support ring stays off the axis only when mu > 2 nu.
  bool chart_valid() const;
  /// Throws ChartError when !chart_valid().
  void require_chart() const;

  StationaryVelocity eval_ur_uz(const TorPoint& pt) const;
  double eval_swirl(double t, const TorPoint& pt) const;
  double eval_swirl_dt(double t, const TorPoint& pt) const;
  /// K(t, rho) with u_theta = Im(e^{i phi} K).
  std::complex<double> swirl_envelope(double t, double rho) const;
  /// Taylor jet of K(t, .) in rho at rho, up to `order`.
  ComplexJet swirl_envelope_jet(double t, double rho, int order) const;
  /// Initial swirl datum; transport of this by the vortex gives eval_swirl.
  double initial_swirl(const TorPoint& pt) const { return eval_swirl(0.0, pt); }
  double eval_pressure(const TorPoint& pt) const { return pressure(pt.rho); }
  double pressure(double rho) const;
  /// (u_theta, u_r, u_z).
  Vec3 velocity(double t, const TorPoint& pt) const;
  Vec3 eval_error(double t, const TorPoint& pt) const { return error_parts(t, pt).total; }
  ErrorParts error_parts(double t, const TorPoint& pt) const;
  Vec3 vorticity(double t, const TorPoint& pt) const;
  DivergenceCheck divergence(double t, const TorPoint& pt) const;
  StationaryResidual stationary_residual(const TorPoint& pt, double fd_step = 0.0) const;
  /// d/drho of the net phase -tA/rho + zeta(rho) carried by the s < 0 swirl
  /// (zero at t_star), evaluated through taylor_eval.
  double net_shear(double t, double rho) const;
  /// Angular velocity of the vortex, A f'(mu rho)/rho.
  double angular_velocity(double rho) const;

  /// Jets in (r, z) up to second order.
  VelocityJets<2, 2> rz_jets(double t, double r, double z) const;
  /// Jets in (rho, phi) up to order D, for D in 1..6.
  template <int D>
  VelocityJets<2, D> torus_jets(double t, const TorPoint& pt) const;
  /// Cartesian velocity jets (second order) at x.
  CartesianJets cartesian_jets(double t, const Vec3& x) const;

  /// Samples a quantity on the rz half-plane. Requires >= 16 nodes per 1/mu.
  AxiField sample(double t, const AxiGrid& grid, Quantity q = Quantity::Velocity) const;
  /// Samples a quantity on a periodic Cartesian grid (3 components, or 1 for pressure).
  /// Requires Nyquist >= 4 mu on every axis and the support well inside the box.
  SpectralField sample(double t, const CartGrid& grid, Quantity q = Quantity::Velocity) const;

  /// Covers the support annulus with a margin of one support width.
  AxiGrid support_grid(int nodes_per_scale = 32) const;
  /// Per-axis box: `box_factor` times the support extent on each axis, with
  /// the resolution chosen so the Nyquist wavenumber is >= nyquist_factor * mu.
  CartGrid cartesian_grid(double box_factor = 4.0, double nyquist_factor = 4.0) const;

  /// Cylindrical values of a quantity at a point (zero outside the support).
  Vec3 point_value(double t, const CylPoint& pt, Quantity q) const;

private:
  ParameterSet params_;
  Profile f_, g_;
  double A_ = 0, amp_ = 0;
  std::shared_ptr<const std::vector<double>> pressure_table_;
  double pressure_total_ = 0;
  double pressure_gradient_sup_ = 0;
};

/// Smallest even n with n >= target that factors into 2, 3, 5 and 7.
int fft_friendly_size(int target);

}  // namespace inflab
