#pragma once

#include <memory>
#include <string>

#include "inflab/jet.hpp"
#include "inflab/profiles.hpp"

namespace inflab {

/// Immutable expression in one variable rho, built from the pieces the field
/// formulas need: constants, rho itself, the shear phase zeta, affine maps,
/// sums, products, sin/cos/exp and profile nodes.
class Expr {
public:
  struct Node;

  static Expr constant(double v);
  static Expr rho();
  /// zeta(rho) = eps^{-N} mu^{-1} / rho.
  static Expr zeta(double eps, int N, double mu);
  /// profile^{(d)}(arg).
  static Expr profile(const Profile& p, const Expr& arg, int d = 0);

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  /// a * x + b.
  friend Expr affine(double a, const Expr& x, double b);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);

  /// Human readable form, for diagnostics.
  std::string str() const;

  const std::shared_ptr<const Node>& node() const { return node_; }

private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Taylor coefficients of fn at rho = center up to `order`.
/// Throws DomainError at rho = 0 when fn contains zeta.
RealJet taylor_eval(const Expr& fn, double center, int order);

}  // namespace inflab
