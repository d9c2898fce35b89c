#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "inflab/jet.hpp"

namespace inflab {

namespace detail {

/// Monomials x^a in NV variables with |a| <= D, sorted by total degree, and
/// the product table index(a) + index(b) -> index(a + b) (or -1 if truncated).
template <int NV, int D>
struct MonomialTable {
  std::vector<std::array<int, NV>> exps;
  std::vector<int> degree;
  std::vector<std::vector<int>> product;
  std::vector<double> factorial_weight;  // prod a_i!

  static const MonomialTable& get() {
    static const MonomialTable table;
    return table;
  }

  int index_of(const std::array<int, NV>& a) const {
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] == a) return static_cast<int>(i);
    return -1;
  }

private:
  MonomialTable() {
    for (int deg = 0; deg <= D; ++deg) {
      std::array<int, NV> a{};
      enumerate(a, 0, deg);
    }
    const std::size_t m = exps.size();
    product.assign(m, std::vector<int>(m, -1));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (degree[i] + degree[j] > D) continue;
        std::array<int, NV> s{};
        for (int v = 0; v < NV; ++v) s[v] = exps[i][v] + exps[j][v];
        product[i][j] = index_of(s);
      }
    for (const auto& a : exps) {
      double w = 1;
      for (int v = 0; v < NV; ++v)
        for (int k = 2; k <= a[v]; ++k) w *= k;
      factorial_weight.push_back(w);
    }
  }
  void enumerate(std::array<int, NV>& a, int var, int remaining) {
    if (var == NV - 1) {
      a[var] = remaining;
      exps.push_back(a);
      int d = 0;
      for (int v = 0; v < NV; ++v) d += a[v];
      degree.push_back(d);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      a[var] = k;
      enumerate(a, var + 1, remaining - k);
    }
  }
};

constexpr int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// Truncated multivariate Taylor polynomial in NV variables, total degree <= D.
/// Coefficients are stored in the order of detail::MonomialTable; the
/// coefficient of x^a is d^a F / a!.
template <int NV, int D>
class MJet {
public:
  static constexpr int kSize = detail::binomial(NV + D, D);
  using Table = detail::MonomialTable<NV, D>;

  MJet() = default;
  MJet(double v) { c_[0] = v; }  // NOLINT: implicit lift of constants

  /// Independent variable number `var` expanded at x0.
  static MJet variable(int var, double x0) {
    MJet j(x0);
    if constexpr (D >= 1) {
      std::array<int, NV> a{};
      a[var] = 1;
      j.c_[Table::get().index_of(a)] = 1.0;
    }
    return j;
  }

  double value() const { return c_[0]; }
  double coeff(int i) const { return c_[i]; }
  double& coeff(int i) { return c_[i]; }

  /// Mixed partial derivative d^a F at the expansion point.
  double partial(const std::array<int, NV>& a) const {
    const auto& t = Table::get();
    int i = t.index_of(a);
    if (i < 0) throw OrderError("partial derivative beyond multivariate jet degree");
    return c_[i] * t.factorial_weight[i];
  }
  /// dF/dx_var.
  double d(int var) const {
    std::array<int, NV> a{};
    a[var] = 1;
    return partial(a);
  }
  /// d^2 F / dx_i dx_j.
  double d2(int i, int j) const {
    std::array<int, NV> a{};
    a[i] += 1;
    a[j] += 1;
    return partial(a);
  }

  MJet operator-() const {
    MJet r;
    for (int i = 0; i < kSize; ++i) r.c_[i] = -c_[i];
    return r;
  }
  MJet& operator+=(const MJet& o) {
    for (int i = 0; i < kSize; ++i) c_[i] += o.c_[i];
    return *this;
  }
  MJet& operator-=(const MJet& o) {
    for (int i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  MJet& operator*=(double s) {
    for (int i = 0; i < kSize; ++i) c_[i] *= s;
    return *this;
  }
  friend MJet operator+(MJet a, const MJet& b) { return a += b; }
  friend MJet operator-(MJet a, const MJet& b) { return a -= b; }
  friend MJet operator*(MJet a, double s) { return a *= s; }
  friend MJet operator*(double s, MJet a) { return a *= s; }
  friend MJet operator+(MJet a, double s) {
    a.c_[0] += s;
    return a;
  }
  friend MJet operator+(double s, MJet a) { return a + s; }
  friend MJet operator-(MJet a, double s) { return a + (-s); }
  friend MJet operator-(double s, const MJet& a) { return (-a) + s; }
  friend MJet operator/(const MJet& a, double s) { return a * (1.0 / s); }

  friend MJet operator*(const MJet& a, const MJet& b) {
    const auto& t = Table::get();
    MJet r;
    for (int i = 0; i < kSize; ++i) {
      if (a.c_[i] == 0.0) continue;
      const auto& row = t.product[i];
      for (int j = 0; j < kSize; ++j) {
        const int k = row[j];
        if (k >= 0) r.c_[k] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  friend MJet operator/(const MJet& a, const MJet& b) { return a * reciprocal(b); }
  friend MJet operator/(double s, const MJet& b) { return reciprocal(b) * s; }

  /// Applies a univariate function given by its Taylor coefficients at
  /// a.value() (orders 0..>=D) to this jet.
  friend MJet compose(const RealJet& outer, const MJet& a) {
    MJet delta = a;
    delta.c_[0] = 0.0;
    const int top = std::min(outer.order(), D);
    MJet r(outer[top]);
    for (int k = top - 1; k >= 0; --k) {
      r = r * delta;
      r.c_[0] += outer[k];
    }
    return r;
  }

  friend MJet reciprocal(const MJet& a) { return compose(reciprocal(RealJet::variable(a.value(), D)), a); }
  friend MJet sqrt(const MJet& a) { return compose(sqrt(RealJet::variable(a.value(), D)), a); }
  friend MJet exp(const MJet& a) { return compose(exp(RealJet::variable(a.value(), D)), a); }
  friend MJet sin(const MJet& a) { return compose(sin(RealJet::variable(a.value(), D)), a); }
  friend MJet cos(const MJet& a) { return compose(cos(RealJet::variable(a.value(), D)), a); }

private:
  std::array<double, kSize> c_{};
};

}  // namespace inflab
