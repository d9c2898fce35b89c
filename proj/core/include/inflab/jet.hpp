#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "inflab/errors.hpp"

namespace inflab {

/// Maximum number of Taylor coefficients a Jet can hold (orders 0..kJetCapacity-1).
inline constexpr int kJetCapacity = 48;

/// Truncated univariate Taylor series. Coefficient k holds f^{(k)}(center)/k!.
/// Binary operations truncate to the smaller order of the two operands.
template <class T>
class Jet {
public:
  Jet() = default;
  explicit Jet(int order) : n_(check(order)) {}

  static Jet constant(T v, int order) {
    Jet j(order);
    j.c_[0] = v;
    return j;
  }
  /// The identity function expanded at x0.
  static Jet variable(T x0, int order) {
    Jet j(order);
    j.c_[0] = x0;
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  int order() const { return n_; }
  T& operator[](int k) { return c_[k]; }
  const T& operator[](int k) const { return c_[k]; }
  T value() const { return c_[0]; }
  /// k-th derivative at the center, k! * c_k.
  T derivative(int k) const {
    if (k > n_) throw OrderError("jet derivative order exceeds jet order");
    double fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    return c_[k] * fact;
  }

  /// Jet of f' at the same center, one order shorter.
  Jet differentiate() const {
    if (n_ == 0) throw OrderError("cannot differentiate an order-0 jet");
    Jet d(n_ - 1);
    for (int k = 0; k < n_; ++k) d.c_[k] = c_[k + 1] * double(k + 1);
    return d;
  }
  /// Keeps orders 0..order.
  Jet truncate(int order) const {
    Jet j(std::min(order, n_));
    for (int k = 0; k <= j.n_; ++k) j.c_[k] = c_[k];
    return j;
  }

  Jet operator-() const {
    Jet r(n_);
    for (int k = 0; k <= n_; ++k) r.c_[k] = -c_[k];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    n_ = std::min(n_, o.n_);
    for (int k = 0; k <= n_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    n_ = std::min(n_, o.n_);
    for (int k = 0; k <= n_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(T s) {
    for (int k = 0; k <= n_; ++k) c_[k] *= s;
    return *this;
  }
  Jet& operator+=(T s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, T s) { return a += s; }
  friend Jet operator+(T s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, T s) { return a += -s; }
  friend Jet operator-(T s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.n_, b.n_));
    for (int k = 0; k <= r.n_; ++k) {
      T acc{};
      for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(const Jet& a, T s) { return a * (T(1) / s); }
  friend Jet operator/(T s, const Jet& a) { return reciprocal(a) * s; }

  friend Jet reciprocal(const Jet& a) {
    if (a.c_[0] == T(0)) throw DomainError("jet reciprocal of a zero value");
    Jet r(a.n_);
    const T inv = T(1) / a.c_[0];
    r.c_[0] = inv;
    for (int k = 1; k <= a.n_; ++k) {
      T acc{};
      for (int i = 1; i <= k; ++i) acc += a.c_[i] * r.c_[k - i];
      r.c_[k] = -acc * inv;
    }
    return r;
  }

  friend Jet exp(const Jet& a) {
    Jet r(a.n_);
    r.c_[0] = std::exp(a.c_[0]);
    for (int k = 1; k <= a.n_; ++k) {
      T acc{};
      for (int i = 1; i <= k; ++i) acc += double(i) * a.c_[i] * r.c_[k - i];
      r.c_[k] = acc / double(k);
    }
    return r;
  }

  /// sin and cos share one recurrence: s' = a' c, c' = -a' s.
  friend void sincos(const Jet& a, Jet& s, Jet& c) {
    s = Jet(a.n_);
    c = Jet(a.n_);
    s.c_[0] = std::sin(a.c_[0]);
    c.c_[0] = std::cos(a.c_[0]);
    for (int k = 1; k <= a.n_; ++k) {
      T as{}, ac{};
      for (int i = 1; i <= k; ++i) {
        as += double(i) * a.c_[i] * c.c_[k - i];
        ac += double(i) * a.c_[i] * s.c_[k - i];
      }
      s.c_[k] = as / double(k);
      c.c_[k] = -ac / double(k);
    }
  }
  friend Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
  }
  friend Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
  }

  friend Jet sqrt(const Jet& a) {
    Jet r(a.n_);
    r.c_[0] = std::sqrt(a.c_[0]);
    if (r.c_[0] == T(0) && a.n_ > 0) throw DomainError("jet sqrt at zero");
    for (int k = 1; k <= a.n_; ++k) {
      T acc = a.c_[k];
      for (int i = 1; i < k; ++i) acc -= r.c_[i] * r.c_[k - i];
      r.c_[k] = acc / (T(2) * r.c_[0]);
    }
    return r;
  }

  /// outer(inner): `outer` holds the Taylor coefficients of a function at
  /// inner.value(); Horner evaluation in the increment inner - inner.value().
  friend Jet compose(const Jet& outer, const Jet& inner) {
    Jet delta = inner;
    delta.c_[0] = T(0);
    const int n = inner.n_;
    Jet r = Jet::constant(outer.c_[outer.n_], n);
    for (int k = outer.n_ - 1; k >= 0; --k) {
      r = r * delta;
      r.c_[0] += outer.c_[k];
    }
    return r;
  }

private:
  static int check(int order) {
    if (order < 0 || order >= kJetCapacity) throw OrderError("jet order out of range");
    return order;
  }
  int n_ = 0;
  std::array<T, kJetCapacity> c_{};
};

using RealJet = Jet<double>;
using ComplexJet = Jet<std::complex<double>>;

inline ComplexJet to_complex(const RealJet& a) {
  ComplexJet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k];
  return r;
}
inline RealJet real_part(const ComplexJet& a) {
  RealJet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k].real();
  return r;
}
inline RealJet imag_part(const ComplexJet& a) {
  RealJet r(a.order());
  for (int k = 0; k <= a.order(); ++k) r[k] = a[k].imag();
  return r;
}

}  // namespace inflab
