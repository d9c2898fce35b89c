#pragma once

#include <optional>
#include <string>

#include "inflab/config.hpp"

namespace inflab {

/// Lebesgue or summability exponent in [1, inf]. Infinity is a sentinel, and
/// every formula that needs 1/p reads reciprocal() which is 0 there.
class Exponent {
public:
  constexpr Exponent() = default;
  static constexpr Exponent finite(double v) { return Exponent(v, false); }
  static constexpr Exponent infinity() { return Exponent(0.0, true); }
  /// Accepts "inf", "infinity", "∞" or a decimal number.
  static Exponent parse(const std::string& text);

  constexpr bool is_infinite() const { return infinite_; }
  constexpr double value() const { return value_; }
  constexpr double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }
  std::string str() const;

  friend constexpr bool operator==(const Exponent&, const Exponent&) = default;

private:
  constexpr Exponent(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_ = 2.0;
  bool infinite_ = false;
};

/// Unvalidated parameter record as read from a config file or the command line.
struct RawParameters {
  double s = 0.25;
  Exponent p = Exponent::finite(2.0);
  Exponent q = Exponent::infinity();
  double eps = 0.5;
  double mu = 64.0;
  std::optional<double> b;
  std::optional<int> N;
  std::optional<int> k0;
  bool theory_mode = false;
};

/// Desk-scale defaults used when neither theory_mode nor an override is given.
inline constexpr double kDeskB = 0.5;
inline constexpr int kDeskN = 2;
inline constexpr int kDefaultK0 = 6;

/// Validated, immutable parameter ledger with all derived scales.
class ParameterSet {
public:
  double s() const { return s_; }
  Exponent p() const { return p_; }
  Exponent q() const { return q_; }
  double eps() const { return eps_; }
  double mu() const { return mu_; }
  double b() const { return b_; }
  double nu() const { return nu_; }
  int N() const { return N_; }
  int k0() const { return k0_; }
  double t_star() const { return t_star_; }
  bool theory_mode() const { return theory_mode_; }
  /// True when b (resp. N) equals the value the theorem prescribes.
  bool b_is_theory() const { return b_is_theory_; }
  bool N_is_theory() const { return N_is_theory_; }

  /// A = eps^2 mu^{2/p - s} nu^{1/p}, the common velocity amplitude.
  double amplitude() const;
  /// The shear scale eps^{-N} mu^{-1}; zeta(rho) = zeta_scale() / rho.
  double zeta_scale() const;
  /// mu / nu = mu^b. The support ring clears the axis only when this exceeds 2.
  double anisotropy() const { return mu_ / nu_; }

  /// key = value text under a [params] header; validate(parse(serialize())) round-trips.
  std::string serialize() const;
  /// 16 hex digit FNV-1a hash of serialize().
  std::string hash() const;
  /// Returns the raw record that reproduces this set under validate().
  RawParameters raw() const;

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;

private:
  friend ParameterSet validate(const RawParameters& raw);
  double s_ = 0, eps_ = 0, mu_ = 0, b_ = 0, nu_ = 0, t_star_ = 0;
  Exponent p_, q_;
  int N_ = 0, k0_ = 0;
  bool theory_mode_ = false, b_is_theory_ = false, N_is_theory_ = false;
};

/// Checks the supercritical window -3 < s - 3/p < -1, s != 0, and all ranges.
/// Throws AdmissibilityError or RangeError.
ParameterSet validate(const RawParameters& raw);

/// b = (-1 - s + 3/p) / 10.
double theory_b(double s, Exponent p);

/// max(ceil(100/|s|), 100). Only meaningful for the asymptotic statement; the
/// jets in this library cannot reach such orders.
int theory_N(double s);

/// Reads s, p, q, eps, mu, b, N, k0, theory_mode from the [params] section.
/// Missing keys keep the values already in `base`.
RawParameters raw_from_config(const Config& cfg, RawParameters base = {});

}  // namespace inflab
