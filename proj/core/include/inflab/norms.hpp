#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "inflab/approx_solution.hpp"
#include "inflab/axi_field.hpp"
#include "inflab/params.hpp"
#include "inflab/spectral_field.hpp"

namespace inflab {

/// One dyadic shell 2^j <= |xi| < 2^{j+1} of the sharp Littlewood-Paley split.
struct ShellEntry {
  int j = 0;
  std::size_t modes = 0;
  /// |Delta_j f|_{L^p}.
  double lp = 0;
  /// |Delta_j f|_{L^2}^2, used for the spectral centroid.
  double energy = 0;
  double weight = 1;
  double weighted = 0;
  /// False when the shell is cut by the box fundamental or by the grid Nyquist limit.
  bool complete = true;
};

struct NormMeta {
  CartGrid grid;
  /// Smallest nonzero and largest representable |xi|.
  double k_min = 0, k_max = 0;
  /// |f_hat(0)|^2 times the box volume (the mean's L^2 energy).
  double zero_mode_energy = 0;
  /// Fraction of L^2 energy carried by modes above 2/3 of Nyquist on some axis.
  double tail_fraction = 0;
  /// max |f| on the box faces divided by max |f|.
  double boundary_ratio = 0;
};

struct NormReport {
  std::map<std::string, double> lebesgue;
  /// Keyed by (k, q); `sobolev_bound` marks entries that are upper bounds.
  std::map<std::pair<int, std::string>, double> sobolev;
  std::map<std::pair<int, std::string>, bool> sobolev_bound;
  Exponent p = Exponent::finite(2.0);
  std::vector<ShellEntry> shells;
  /// Keyed by "s,p,q".
  std::map<std::string, double> besov;
  NormMeta meta;

  /// sum_j j e_j / sum_j e_j over shell energies.
  double centroid() const;
  /// l^q aggregation of 2^{sj} |Delta_j f|_{L^p}.
  double besov_value(double s, Exponent q) const;
  /// Columns j, shell_lp, weight, weighted.
  void write_csv(std::ostream& out) const;
  /// Sorted-key JSON summary.
  std::string summary_json() const;
};

struct BesovOptions {
  /// SupportError when max |f| on the box faces exceeds this fraction of max |f|.
  double boundary_tol = 1e-8;
  /// AliasError when the high-wavenumber tail exceeds this fraction of the energy.
  double alias_tol = 0.01;
  bool check = true;
};

double lebesgue_norm(const AxiField& field, Exponent q);
double lebesgue_norm(const SpectralField& field, Exponent q);
/// Quadrature of sum |v|^q * cell over a flat array.
double lebesgue_norm(const std::vector<double>& values, double cell, Exponent q);

struct SobolevValue {
  double value = 0;
  /// True for k >= 3, where only the chart upper bound is available.
  bool is_bound = false;
};

/// |grad^k u|_{L^q} of the approximate solution at time t, by quadrature on the
/// rz grid with measure 2 pi r dr dz. k <= 2 is exact (Cartesian jets);
/// 3 <= k <= 6 is the torus-chart upper bound. OrderError beyond.
SobolevValue sobolev_norm(const ApproxSolution& sol, double t, int k, Exponent q, const AxiGrid& grid);

/// Sharp-shell Besov seminorm and the full ledger. s may be negative.
std::pair<double, NormReport> besov_norm(const SpectralField& field, double s, Exponent p, Exponent q,
                                         const BesovOptions& opts = {});
/// Per-shell table of |Delta_j f|_{L^p}, sorted by j, weights left at 1.
NormReport dyadic_report(const SpectralField& field, Exponent p, const BesovOptions& opts = {});

}  // namespace inflab
