#include "inflab/params.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>

#include "inflab/errors.hpp"

namespace inflab {
namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "∞") return infinity();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw IOError("not an exponent: " + text);
  }
  if (used != text.size()) throw IOError("not an exponent: " + text);
  if (std::isinf(v)) return infinity();
  return finite(v);
}

std::string Exponent::str() const { return infinite_ ? "inf" : fmt17(value_); }

double ParameterSet::amplitude() const {
  return eps_ * eps_ * std::pow(mu_, 2.0 * p_.reciprocal() - s_) * std::pow(nu_, p_.reciprocal());
}

double ParameterSet::zeta_scale() const { return std::pow(eps_, -N_) / mu_; }

std::string ParameterSet::serialize() const {
  std::ostringstream out;
  out << "[params]\n";
  out << "s = " << fmt17(s_) << "\n";
  out << "p = " << p_.str() << "\n";
  out << "q = " << q_.str() << "\n";
  out << "eps = " << fmt17(eps_) << "\n";
  out << "mu = " << fmt17(mu_) << "\n";
  out << "b = " << fmt17(b_) << "\n";
  out << "N = " << N_ << "\n";
  out << "k0 = " << k0_ << "\n";
  out << "theory_mode = " << (theory_mode_ ? "true" : "false") << "\n";
  out << "# derived: nu = " << fmt17(nu_) << "\n";
  out << "# derived: t_star = " << fmt17(t_star_) << "\n";
  out << "# derived: amplitude = " << fmt17(amplitude()) << "\n";
  out << "# derived: b_is_theory = " << (b_is_theory_ ? "true" : "false")
      << ", N_is_theory = " << (N_is_theory_ ? "true" : "false") << "\n";
  return out.str();
}

std::string ParameterSet::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RawParameters ParameterSet::raw() const {
  RawParameters r;
  r.s = s_;
  r.p = p_;
  r.q = q_;
  r.eps = eps_;
  r.mu = mu_;
  r.b = b_;
  r.N = N_;
  r.k0 = k0_;
  r.theory_mode = theory_mode_;
  return r;
}

double theory_b(double s, Exponent p) { return 0.1 * (-1.0 - s + 3.0 * p.reciprocal()); }

int theory_N(double s) {
  if (s == 0.0) throw AdmissibilityError("theory_N: s must be nonzero");
  return std::max(static_cast<int>(std::ceil(100.0 / std::fabs(s) - 1e-12)), 100);
}

ParameterSet validate(const RawParameters& raw) {
  if (!std::isfinite(raw.s)) throw RangeError("s must be finite");
  if (raw.s == 0.0) throw AdmissibilityError("s = 0 is excluded: the growth mechanism needs a signed regularity index");
  if (!raw.p.is_infinite() && !(raw.p.value() >= 1.0)) throw RangeError("p must lie in [1, inf]");
  if (!raw.q.is_infinite() && !(raw.q.value() >= 1.0)) throw RangeError("q must lie in [1, inf]");
  const double gap = raw.s - 3.0 * raw.p.reciprocal();
  if (!(gap > -3.0 && gap < -1.0))
    throw AdmissibilityError("s - 3/p = " + fmt17(gap) + " is outside the supercritical window (-3, -1)");
  if (!(raw.eps > 0.0) || !std::isfinite(raw.eps)) throw RangeError("eps must be positive");
  if (!(raw.mu >= 1.0) || !std::isfinite(raw.mu)) throw RangeError("mu must be >= 1");

  ParameterSet ps;
  ps.s_ = raw.s;
  ps.p_ = raw.p;
  ps.q_ = raw.q;
  ps.eps_ = raw.eps;
  ps.mu_ = raw.mu;
  ps.theory_mode_ = raw.theory_mode;

  const double b_th = theory_b(raw.s, raw.p);
  const int n_th = theory_N(raw.s);
  ps.b_ = raw.b.value_or(raw.theory_mode ? b_th : kDeskB);
  ps.N_ = raw.N.value_or(raw.theory_mode ? n_th : kDeskN);
  ps.k0_ = raw.k0.value_or(kDefaultK0);
  ps.b_is_theory_ = std::fabs(ps.b_ - b_th) <= 1e-15 * std::max(1.0, std::fabs(b_th));
  ps.N_is_theory_ = ps.N_ == n_th;

  if (!(ps.b_ > 0.0 && ps.b_ < 1.0)) throw RangeError("b = " + fmt17(ps.b_) + " must lie in (0, 1)");
  if (ps.N_ < 1) throw RangeError("N must be a positive integer");
  if (ps.k0_ < 1) throw RangeError("k0 must be a positive integer");
  if (!(ps.k0_ > std::fabs(ps.s_) + 3.0))
    throw RangeError("k0 = " + std::to_string(ps.k0_) + " must exceed |s| + 3 = " + fmt17(std::fabs(ps.s_) + 3.0));

  const double inv_p = ps.p_.reciprocal();
  ps.nu_ = std::pow(ps.mu_, 1.0 - ps.b_);
  ps.t_star_ = std::pow(ps.eps_, -ps.N_ - 2.0) * std::pow(ps.mu_, -1.0 - 2.0 * inv_p + ps.s_) *
               std::pow(ps.nu_, -inv_p);
  return ps;
}

RawParameters raw_from_config(const Config& cfg, RawParameters base) {
  const std::string sec = "params";
  if (auto v = cfg.get_double(sec, "s")) base.s = *v;
  if (auto v = cfg.get(sec, "p")) base.p = Exponent::parse(*v);
  if (auto v = cfg.get(sec, "q")) base.q = Exponent::parse(*v);
  if (auto v = cfg.get_double(sec, "eps")) base.eps = *v;
  if (auto v = cfg.get_double(sec, "mu")) base.mu = *v;
  if (auto v = cfg.get_double(sec, "b")) base.b = *v;
  if (auto v = cfg.get_int(sec, "N")) base.N = *v;
  if (auto v = cfg.get_int(sec, "k0")) base.k0 = *v;
  if (auto v = cfg.get_bool(sec, "theory_mode")) base.theory_mode = *v;
  return base;
}

}  // namespace inflab
