#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "inflab/jet.hpp"

namespace inflab {

/// Closed interval on the rho axis.
struct Interval {
  double lo = 0, hi = 0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// exp(-1/x) for x > 0, zero otherwise, as a jet. Below x = 1/700 the value
/// underflows past 1e-304 and the jet is taken to be exactly zero.
RealJet mollifier_jet(double x, int order);

/// C^inf ramp: 0 for x <= 0, 1 for x >= 1.
RealJet ramp_jet(double x, int order);

/// Plateau bump: 1 on [1, 3/2], supported in [1/2, 2].
RealJet plateau_jet(double rho, int order);

/// A compactly supported smooth profile with exact derivatives of every order
/// up to max_order() and, for f, antiderivatives down to -N.
class Profile {
public:
  enum class Kind { F, G };

  Kind kind() const { return kind_; }
  /// Smoothing order N for f, 0 for g.
  int smoothing() const { return N_; }
  Interval support() const { return support_; }
  int min_order() const { return -N_; }
  int max_order() const;

  /// d-th derivative at rho; negative d is the |d|-fold antiderivative that
  /// vanishes left of the support. Throws OrderError outside [min_order, max_order].
  double eval(double rho, int d) const;
  /// Taylor jet of the d-th derivative at rho up to `order`.
  RealJet jet(double rho, int d, int order) const;

  /// CSV rows "rho,d,value" on n equispaced points of [lo, hi] for d in [d_lo, d_hi].
  void tabulate(std::ostream& out, double lo, double hi, int n, int d_lo, int d_hi) const;

private:
  friend Profile make_f(int N);
  friend Profile make_g();
  Kind kind_ = Kind::G;
  int N_ = 0;
  Interval support_{};
};

/// f = d^N/drho^N [rho^{N+1}/(N+1)! chi(rho)], so f(rho) = rho and f' = 1 on [1, 3/2].
Profile make_f(int N);
/// g = e * exp(-1/(1 - x^2)), x = 4(rho - 5/4); supported in [1, 3/2], g(5/4) = 1.
Profile make_g();

}  // namespace inflab
