#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "inflab/approx_solution.hpp"
#include "inflab/norms.hpp"
#include "inflab/spectral_field.hpp"

namespace inflab {

/// Leray projection (I - xi xi^T / |xi|^2) u_hat; the zero mode is kept and
/// modes on a Nyquist plane are dropped.
SpectralField project_div_free(const SpectralField& field);

/// max |xi . u_hat| / max |xi| |u_hat| over all modes.
double divergence_residual(const SpectralField& field);

/// Spectral curl i xi x u_hat, Nyquist planes dropped.
SpectralField curl(const SpectralField& field);

struct StepDiagnostics {
  double energy_before = 0, energy_after = 0;
  /// Simpson quadrature of 2 |grad u|^2 over the step.
  double dissipated = 0;
  /// |E_after - E_before + dissipated| / E_before.
  double balance_residual = 0;
  double max_velocity = 0;
};

/// Periodic incompressible Navier-Stokes with unit viscosity,
/// d_t u - Delta u + u.grad u + grad p = 0, in rotational form. Fourier-side
/// state, integrating-factor RK4, 2/3-rule dealiasing of the products.
class NseSolver {
public:
  explicit NseSolver(const CartGrid& grid);

  const CartGrid& grid() const { return grid_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  /// Projects and stores the field.
  void set_state(const SpectralField& u);
  SpectralField state() const;
  const std::array<std::vector<cplx>, 3>& modes() const { return uh_; }

  /// One step. Throws BlowupError when max |u| exceeds `blowup_factor` times
  /// the value at set_state.
  StepDiagnostics step(double dt, bool diagnostics = false);

  /// Fourier-side right-hand side P(u x omega) + Delta u of an arbitrary field.
  std::array<std::vector<cplx>, 3> rhs(const std::array<std::vector<cplx>, 3>& u) const;

  /// |u|_{L^2}^2 and |grad u|_{L^2}^2 from the modes.
  double energy() const;
  double enstrophy() const;
  double max_velocity() const;
  /// The k = 0 coefficients.
  std::array<cplx, 3> mean() const;

  double blowup_factor = 1e6;

private:
  std::array<std::vector<cplx>, 3> nonlinear(const std::array<std::vector<cplx>, 3>& u, double* umax) const;
  double energy_of(const std::array<std::vector<cplx>, 3>& u, bool gradient) const;

  CartGrid grid_;
  double time_ = 0;
  double initial_max_ = 0;
  std::vector<double> kx_, ky_, kz_;
  std::vector<double> k2_;
  std::vector<char> keep_;
  std::vector<double> mult_;
  std::array<std::vector<cplx>, 3> uh_;
};

/// Projected single step of a physical-space field; convenience wrapper.
SpectralField step(const SpectralField& state, double dt);

/// What solve_and_compare records at each probe time.
struct ProbeRecord {
  double t = 0;
  double l2_u = 0, l2_ubar = 0, l2_w = 0;
  double linf_u = 0, linf_ubar = 0, linf_w = 0;
  /// |.|_{B^s_{p,inf}} of u and ubar (NaN when Besov probes are off).
  double besov_u = 0, besov_ubar = 0;
  /// max |u| on the box faces / max |u|.
  double boundary_ratio = 0;
  double divergence = 0;
};

struct SolveTrace {
  std::vector<ProbeRecord> probes;
  std::vector<double> step_times, step_dt, step_umax;
  std::string dealias_mask = "2/3";
  CartGrid grid;
  /// |u(t_end)|_{B^s_{p,inf}} and |u_0|_{B^s_{p,1}}.
  double inflation_final = 0, inflation_initial = 0;

  void write_csv(std::ostream& out) const;
};

struct SolveSpec {
  /// Zero dims selects the per-axis rule: box 4x support, Nyquist >= 6 mu.
  CartGrid grid;
  double t_end = 0;
  /// Fixed step; zero selects the advective CFL bound.
  double dt = 0;
  double cfl = 0.5;
  std::vector<double> probes;
  bool besov_probes = true;
  /// AliasError at a probe whose spectrum tail exceeds 1%; otherwise the tail is only recorded.
  bool alias_check = true;
  /// Refuse to start when the estimated working set exceeds this.
  double memory_cap_bytes = 3.0e9;
  /// Optional directory for NIFS snapshots at probe times ("" disables).
  std::string snapshot_dir;
  int snapshot_every = 1;
};

/// Spectral NSE residual of ubar, d_t ubar - P(ubar x omega_bar) - Delta ubar,
/// against the projected closed-form error field P(E), both on `grid`.
struct ForcingCheck {
  double residual_l2 = 0, error_l2 = 0, difference_l2 = 0;
  double relative() const { return error_l2 > 0 ? difference_l2 / error_l2 : difference_l2; }
};
ForcingCheck forcing_check(const ApproxSolution& sol, double t, const CartGrid& grid);

/// Estimated bytes for a solve on this grid.
double solver_memory_estimate(const CartGrid& grid);

/// Solves from u_0 = ubar(0) to t_end and compares with ubar at the probe times.
SolveTrace solve_and_compare(const ApproxSolution& sol, const SolveSpec& spec);

}  // namespace inflab
