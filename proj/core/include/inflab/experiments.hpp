#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "inflab/approx_solution.hpp"
#include "inflab/io.hpp"
#include "inflab/nse.hpp"
#include "inflab/params.hpp"

namespace inflab {

/// A parameter grid plus resolution and output settings. Empty lists fall
/// back to the single value in `base`.
struct ExperimentSpec {
  std::string name = "experiment";
  RawParameters base;
  std::vector<double> s, eps, mu, b;
  std::vector<Exponent> p;
  std::vector<int> N;

  /// rz-grid resolution for pointwise norms.
  int nodes_per_scale = 32;
  /// Cartesian grid: zero dims select the per-axis rule below.
  std::array<int, 3> dims{0, 0, 0};
  double box_factor = 4.0;
  double nyquist_factor = 4.0;
  /// (k, q) pairs for the scaling scan.
  std::vector<std::pair<int, Exponent>> probes{{0, Exponent::infinity()}, {1, Exponent::infinity()}};
  /// Number of equally spaced times in [0, t_star] over which time-sup norms are taken.
  int time_samples = 5;
  bool with_nse = false;
  /// Besov readouts throw AliasError/SupportError when set; otherwise the
  /// tail fractions are only recorded.
  bool alias_check = true;
  double memory_cap_bytes = 3.0e9;
  std::string out_dir;

  /// Cartesian product of the lists; throws on any inadmissible entry.
  std::vector<ParameterSet> expand() const;
  /// Cartesian grid for one parameter set.
  CartGrid grid_for(const ApproxSolution& sol) const;
};

/// Least-squares line through (x, y).
struct SlopeFit {
  std::string label;
  std::vector<double> x, y;
  double slope = 0, intercept = 0;
  double predicted = 0;
  /// |slope - predicted| / |predicted| (absolute when predicted == 0).
  double deviation = 0;
  bool skipped = false;
  std::string note;

  bool within(double tol) const { return !skipped && deviation <= tol; }
};

/// Needs at least `min_points` points; RangeError otherwise.
SlopeFit fit_slope(const std::string& label, const std::vector<double>& x, const std::vector<double>& y,
                   double predicted, int min_points = 4);

/// Log-log slope of |grad^k ubar|_{L^q} in mu: k - s + 2/p - 2/q + (1/p - 1/q)(1 - b).
double predicted_norm_slope(int k, Exponent q, double s, Exponent p, double b);
/// Log-log slope of mu^{1-s+2/p} nu^{1/p} mu^{-s+2/p} nu^{1/p} in mu.
double error_scale_slope(double s, Exponent p, double b);
double error_scale(const ParameterSet& ps);

struct ScanReport {
  std::vector<SlopeFit> fits;
  CsvTable table;

  std::string summary_json() const;
};

/// sup over t in [0, t_star] of |E(t)|_{L^q}, sampled at `times` equally spaced times.
double error_sup_norm(const ApproxSolution& sol, Exponent q, const AxiGrid& grid, int times);

/// For each fixed (s, p, b, N, eps), fits every probe norm at t = 0 and the
/// time-sup of |E|_{L^inf} (raw and divided by error_scale) against log mu.
ScanReport run_scaling_scan(const ExperimentSpec& spec);

struct InflationRow {
  std::string hash;
  double s = 0, eps = 0, mu = 0;
  /// |ubar(0)|_{B^s_{p,1}}, |ubar(0)|_{B^s_{p,inf}}, |ubar(t_star)|_{B^s_{p,inf}}.
  double initial_b1 = 0, initial_binf = 0, final_binf = 0;
  double centroid_initial = 0, centroid_final = 0;
  double tail_initial = 0, tail_final = 0;
  /// Solver readouts when requested (NaN otherwise).
  double nse_initial_b1 = 0, nse_final_binf = 0, nse_l2_ratio = 0;
  double ratio() const { return final_binf / initial_b1; }
};

struct InflationReport {
  std::vector<InflationRow> rows;
  CsvTable table;
  std::string summary_json() const;
};

/// Approximate-level inflation ratio and dyadic centroids per parameter set;
/// with `with_nse` the same readout for the solved u.
InflationReport run_inflation(const ExperimentSpec& spec);

struct VorticityRow {
  std::string hash;
  double s = 0, eps = 0, mu = 0;
  int N = 0;
  /// max |omega_bar(t_star)| / max |omega_bar(0)| on the rz grid.
  double vorticity_ratio = 0;
  /// max |d_rho u_theta(t_star)| / max |d_rho u_theta(0)|.
  double mixing_ratio = 0;
  double nse_vorticity_ratio = 0;
};

struct VorticityReport {
  std::vector<VorticityRow> rows;
  /// Slopes in log eps, predicted -N, one per (s, p, mu, N) group with >= 3 eps values.
  std::vector<SlopeFit> vorticity_fits, mixing_fits;
  CsvTable table;
  std::string summary_json() const;
};

/// max over the rz grid of |omega_bar(t)|.
double vorticity_sup(const ApproxSolution& sol, double t, const AxiGrid& grid);
/// max |d_rho u_theta(t)| / max |d_rho u_theta(0)| over the swirl support.
double mixing_ratio(const ApproxSolution& sol, double t, int n_rho = 2000, int n_phi = 256);

VorticityReport run_vorticity_growth(const ExperimentSpec& spec);

/// Writes text to `path`; byte-identical for identical input. IOError on failure.
void persist(const std::string& path, const std::string& content);
void persist(const std::string& path, const CsvTable& table);
void persist(const std::string& path, const SolveTrace& trace);
void persist(const std::string& path, const SpectralField& snapshot);

/// Reads an ExperimentSpec from the [experiment] and [params] sections.
ExperimentSpec spec_from_config(const Config& cfg);

}  // namespace inflab
