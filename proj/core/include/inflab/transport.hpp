#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "inflab/approx_solution.hpp"
#include "inflab/geometry.hpp"

namespace inflab {

/// Feet of backward characteristics of the stationary vortex (u_r, u_zp).
struct FlowMap {
  double t = 0;
  int order = 4;
  /// RK4 steps used on the longest trajectory.
  int steps = 0;
  std::vector<TorPoint> targets;
  std::vector<TorPoint> feet;
};

struct CharacteristicOptions {
  /// Target phase error per trajectory, in radians (rho differences count relative to rho).
  double phase_tol = 1e-12;
  /// Largest step count tried before giving up with StepError.
  int max_steps = 1 << 16;
};

/// Integrates dX/ds = -(u_r, u_zp)(X) with classical RK4 from each target point
/// back over time t, halving the step until two successive resolutions agree to
/// the phase tolerance. The state is (rho, phi) about the ring r = 1/nu, z = 0,
/// so the phase carries no Cartesian roundoff; rho is left free.
FlowMap backward_characteristics(const ApproxSolution& sol, const std::vector<TorPoint>& pts, double t,
                                 const CharacteristicOptions& opts = {});

/// Exact flow on one ring: rho is conserved and phi turns at A f'(mu rho)/rho.
TorPoint ring_rotation(const ApproxSolution& sol, const TorPoint& pt, double t);

using Datum = std::function<double(const TorPoint&)>;

/// datum(Phi_{-t}(pt)) for every point.
std::vector<double> advect(const ApproxSolution& sol, const Datum& datum, double t, const std::vector<TorPoint>& pts,
                           const CharacteristicOptions& opts = {});
/// Same for several increasing times; one integration per point covers all of them.
std::vector<std::vector<double>> advect(const ApproxSolution& sol, const Datum& datum, const std::vector<double>& times,
                                        const std::vector<TorPoint>& pts, const CharacteristicOptions& opts = {});

struct GrowthSample {
  double t = 0;
  /// |d_rho u_theta(t)|_{L^inf}.
  double dmax = 0;
  /// |u_theta(t)|_{L^p} over R^3 (measure 2 pi r dr dz).
  double lp = 0;
};

struct GrowthOptions {
  int n_rho = 2000;
  int n_phi = 256;
};

/// Dense (rho, phi) scan of the closed-form swirl at each time.
std::vector<GrowthSample> growth_curve(const ApproxSolution& sol, const std::vector<double>& times,
                                       const GrowthOptions& opts = {});

/// CSV with columns t, dmax, lp.
void write_growth_csv(std::ostream& out, const std::vector<GrowthSample>& curve);

}  // namespace inflab
