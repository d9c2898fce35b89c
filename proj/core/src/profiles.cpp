#include "inflab/profiles.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace inflab {
namespace {

constexpr double kMollifierFloor = 1.0 / 700.0;

double factorial_ratio(int top, int bottom) {
  // top! / bottom!
  double r = 1;
  for (int i = bottom + 1; i <= top; ++i) r *= i;
  return r;
}

/// Jet in x of h(a + s x) given the jet of h at a + s x0.
RealJet rescale(RealJet j, double s) {
  double f = 1;
  for (int k = 0; k <= j.order(); ++k) {
    j[k] *= f;
    f *= s;
  }
  return j;
}

bool is_zero(const RealJet& j) {
  for (int k = 0; k <= j.order(); ++k)
    if (j[k] != 0.0) return false;
  return true;
}

}  // namespace

RealJet mollifier_jet(double x, int order) {
  if (x <= kMollifierFloor) return RealJet(order);
  return exp(-reciprocal(RealJet::variable(x, order)));
}

RealJet ramp_jet(double x, int order) {
  RealJet left = mollifier_jet(x, order);
  RealJet right = rescale(mollifier_jet(1.0 - x, order), -1.0);
  if (is_zero(left)) return RealJet(order);
  if (is_zero(right)) return RealJet::constant(1.0, order);
  return left / (left + right);
}

RealJet plateau_jet(double rho, int order) {
  RealJet up = rescale(ramp_jet(2.0 * rho - 1.0, order), 2.0);
  if (is_zero(up)) return up;
  RealJet down = rescale(ramp_jet(4.0 - 2.0 * rho, order), -2.0);
  return up * down;
}

Profile make_f(int N) {
  if (N < 1) throw OrderError("profile f needs N >= 1");
  if (N >= kJetCapacity - 2) throw OrderError("profile f: N exceeds jet capacity");
  Profile p;
  p.kind_ = Profile::Kind::F;
  p.N_ = N;
  p.support_ = {0.5, 2.0};
  return p;
}

Profile make_g() {
  Profile p;
  p.kind_ = Profile::Kind::G;
  p.N_ = 0;
  p.support_ = {1.0, 1.5};
  return p;
}

int Profile::max_order() const { return kJetCapacity - 1 - N_; }

RealJet Profile::jet(double rho, int d, int order) const {
  if (d < min_order() || d > max_order()) throw OrderError("profile derivative order out of range");
  if (order < 0 || d + order > max_order()) throw OrderError("profile jet order exceeds capacity");
  RealJet out(order);
  if (!(rho > support_.lo && rho < support_.hi)) return out;

  if (kind_ == Kind::G) {
    const int n = d + order;
    RealJet x = RealJet::variable(rho, n) * 4.0 - 5.0;
    RealJet u = 1.0 - x * x;
    if (u.value() <= kMollifierFloor) return out;
    RealJet g = exp(-reciprocal(u)) * std::exp(1.0);
    for (int k = 0; k <= order; ++k) out[k] = g[d + k] * factorial_ratio(d + k, k);
    return out;
  }

  // f^{(d)} = ftilde^{(N + d)}, ftilde = rho^{N+1}/(N+1)! * chi(rho).
  const int base = N_ + d;
  const int n = base + order;
  const int m = N_ + 1;
  RealJet mono(n);
  for (int k = 0; k <= std::min(n, m); ++k)
    mono[k] = std::pow(rho, m - k) / (factorial_ratio(k, 1) * factorial_ratio(m - k, 1));
  RealJet ft = mono * plateau_jet(rho, n);
  for (int k = 0; k <= order; ++k) out[k] = ft[base + k] * factorial_ratio(base + k, k);
  return out;
}

double Profile::eval(double rho, int d) const { return jet(rho, d, 0)[0]; }

void Profile::tabulate(std::ostream& out, double lo, double hi, int n, int d_lo, int d_hi) const {
  out << "rho,d,value\n";
  char buf[96];
  for (int d = d_lo; d <= d_hi; ++d)
    for (int i = 0; i < n; ++i) {
      const double rho = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
      std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g\n", rho, d, eval(rho, d));
      out << buf;
    }
}

}  // namespace inflab
