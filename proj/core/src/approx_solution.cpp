#include "inflab/approx_solution.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "inflab/errors.hpp"
#include "inflab/expr.hpp"
#include "parallel.hpp"

namespace inflab {
namespace {

constexpr int kPressureIntervals = 512;
constexpr double kPressureLo = 0.5, kPressureHi = 2.0;
const cplx kI(0.0, 1.0);

/// Jet in rho of h(mu rho) from the jet of h at mu rho.
RealJet to_rho(RealJet j, double mu) {
  double f = 1;
  for (int k = 0; k <= j.order(); ++k) {
    j[k] *= f;
    f *= mu;
  }
  return j;
}

double lift(const RealJet& j, double) { return j[0]; }
template <int NV, int D>
MJet<NV, D> lift(const RealJet& j, const MJet<NV, D>& x) {
  return compose(j, x);
}

double value_of(double x) { return x; }
template <int NV, int D>
double value_of(const MJet<NV, D>& x) {
  return x.value();
}

template <class S>
struct Comps {
  S u_theta, u_r, u_zp, u_zc;
};

double integrand(const Profile& f, double x) {
  const double d = f.eval(x, 1);
  return d * d / x;
}

double gk(const Profile& f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double x) { return integrand(f, x); }, a, b, 0, 0.0);
}

}  // namespace

int fft_friendly_size(int target) {
  int n = std::max(2, target);
  for (;; ++n) {
    if (n % 2) continue;
    int m = n;
    for (int p : {2, 3, 5, 7})
      while (m % p == 0) m /= p;
    if (m == 1) return n;
  }
}

ApproxSolution::ApproxSolution(const ParameterSet& params)
    : params_(params), f_(make_f(params.N())), g_(make_g()) {
  A_ = params_.amplitude();
  const double inv_p = params_.p().reciprocal();
  if (params_.s() > 0) {
    amp_ = A_;
  } else {
    const int k0 = params_.k0();
    amp_ = std::pow(params_.eps(), -2.0 + k0 * params_.N()) *
           std::pow(params_.mu(), 2.0 * inv_p - params_.s() - k0) * std::pow(params_.nu(), inv_p);
  }
  auto table = std::make_shared<std::vector<double>>(kPressureIntervals + 1, 0.0);
  const double h = (kPressureHi - kPressureLo) / kPressureIntervals;
  for (int i = 0; i < kPressureIntervals; ++i)
    (*table)[i + 1] = (*table)[i] + gk(f_, kPressureLo + i * h, kPressureLo + (i + 1) * h);
  pressure_total_ = table->back();
  pressure_table_ = table;
  double sup = 0;
  for (int i = 0; i <= 8 * kPressureIntervals; ++i)
    sup = std::max(sup, integrand(f_, kPressureLo + i * h / 8));
  pressure_gradient_sup_ = A_ * A_ * params_.mu() * sup;
}

bool ApproxSolution::in_support(double rho) const {
  const double x = params_.mu() * rho;
  return x > 0.5 && x < 2.0;
}

bool ApproxSolution::chart_valid() const { return params_.mu() > 2.0 * params_.nu(); }

void ApproxSolution::require_chart() const {
  if (!chart_valid())
    throw ChartError("support ring mu rho <= 2 reaches the axis: mu / nu = mu^b = " +
                     std::to_string(params_.anisotropy()) + " must exceed 2");
}

double ApproxSolution::pressure(double rho) const {
  const double x = params_.mu() * rho;
  const double a2 = A_ * A_;
  if (x <= kPressureLo) return 0.0;
  if (x >= kPressureHi) return a2 * pressure_total_;
  const double h = (kPressureHi - kPressureLo) / kPressureIntervals;
  const int i = std::min(kPressureIntervals - 1, static_cast<int>((x - kPressureLo) / h));
  const double x0 = kPressureLo + i * h;
  return a2 * ((*pressure_table_)[i] + gk(f_, x0, x));
}

double ApproxSolution::angular_velocity(double rho) const {
  return A_ * f_.eval(params_.mu() * rho, 1) / rho;
}

namespace {

ComplexJet envelope_jet(const ApproxSolution& sol, double t, double rho0, int order, bool time_derivative) {
  const ParameterSet& ps = sol.params();
  const double mu = ps.mu();
  ComplexJet zero(order);
  if (!(mu * rho0 > 1.0 && mu * rho0 < 1.5)) return zero;
  ComplexJet H(order);
  if (ps.s() > 0) {
    H = to_complex(to_rho(sol.g().jet(mu * rho0, 0, order), mu));
  } else {
    const int k0 = ps.k0();
    const int n = k0 + order;
    ComplexJet zeta = to_complex(reciprocal(RealJet::variable(rho0, n))) * cplx(0.0, ps.zeta_scale());
    ComplexJet premix = exp(zeta) * to_complex(to_rho(sol.g().jet(mu * rho0, 0, n), mu));
    for (int k = 0; k <= order; ++k) {
      double ratio = 1;
      for (int i = k + 1; i <= k0 + k; ++i) ratio *= i;
      H[k] = premix[k0 + k] * ratio;
    }
  }
  ComplexJet inv_rho = to_complex(reciprocal(RealJet::variable(rho0, order)));
  ComplexJet phase = exp(inv_rho * cplx(0.0, -t * sol.amplitude()));
  ComplexJet K = phase * H * cplx(sol.swirl_amplitude(), 0.0);
  if (time_derivative) K = K * inv_rho * cplx(0.0, -sol.amplitude());
  return K;
}

template <class S>
Comps<S> kernel(const ApproxSolution& sol, double t, const S& rho, const S& c, const S& s, const S& r,
                int order, bool time_derivative = false) {
  const double mu = sol.params().mu();
  const double A = sol.amplitude();
  const double rho0 = value_of(rho);
  Comps<S> out;
  const RealJet f0 = to_rho(sol.f().jet(mu * rho0, 0, order), mu);
  const RealJet f1 = to_rho(sol.f().jet(mu * rho0, 1, order), mu);
  const S fv = lift(f0, rho);
  const S fd = lift(f1, rho);
  out.u_r = -A * (fd * s);
  out.u_zp = A * (fd * c);
  out.u_zc = (A / mu) * (fv / r);
  const ComplexJet K = envelope_jet(sol, t, rho0, order, time_derivative);
  out.u_theta = s * lift(real_part(K), rho) + c * lift(imag_part(K), rho);
  return out;
}

template <int NV, int D>
VelocityJets<NV, D> to_jets(const Comps<MJet<NV, D>>& c) {
  return {c.u_theta, c.u_r, c.u_zp, c.u_zc};
}

void check_point(const ApproxSolution& sol, const TorPoint& pt) {
  if (!(pt.rho > 0.0)) throw DomainError("evaluation at rho = 0");
  const CylPoint cp = from_toroidal(pt, sol.params().nu());
  if (!(cp.r > 0.0)) throw DomainError("evaluation at r <= 0");
}

}  // namespace

std::complex<double> ApproxSolution::swirl_envelope(double t, double rho) const {
  if (!(rho > 0.0)) throw DomainError("swirl envelope at rho = 0");
  return envelope_jet(*this, t, rho, 0, false)[0];
}

ComplexJet ApproxSolution::swirl_envelope_jet(double t, double rho, int order) const {
  if (!(rho > 0.0)) throw DomainError("swirl envelope at rho = 0");
  return envelope_jet(*this, t, rho, order, false);
}

StationaryVelocity ApproxSolution::eval_ur_uz(const TorPoint& pt) const {
  check_point(*this, pt);
  if (!in_support(pt.rho)) return {};
  const CylPoint cp = from_toroidal(pt, params_.nu());
  auto c = kernel<double>(*this, 0.0, pt.rho, std::cos(pt.phi), std::sin(pt.phi), cp.r, 0);
  return {c.u_r, c.u_zp, c.u_zc};
}

double ApproxSolution::eval_swirl(double t, const TorPoint& pt) const {
  if (!(pt.rho > 0.0)) throw DomainError("swirl at rho = 0");
  const cplx K = swirl_envelope(t, pt.rho);
  return std::sin(pt.phi) * K.real() + std::cos(pt.phi) * K.imag();
}

double ApproxSolution::eval_swirl_dt(double t, const TorPoint& pt) const {
  if (!(pt.rho > 0.0)) throw DomainError("swirl at rho = 0");
  const cplx K = envelope_jet(*this, t, pt.rho, 0, true)[0];
  return std::sin(pt.phi) * K.real() + std::cos(pt.phi) * K.imag();
}

Vec3 ApproxSolution::velocity(double t, const TorPoint& pt) const {
  check_point(*this, pt);
  if (!in_support(pt.rho)) return {0, 0, 0};
  const CylPoint cp = from_toroidal(pt, params_.nu());
  auto c = kernel<double>(*this, t, pt.rho, std::cos(pt.phi), std::sin(pt.phi), cp.r, 0);
  return {c.u_theta, c.u_r, c.u_zp + c.u_zc};
}

VelocityJets<2, 2> ApproxSolution::rz_jets(double t, double r, double z) const {
  using J = MJet<2, 2>;
  const J R = J::variable(0, r), Z = J::variable(1, z);
  const J X = R - 1.0 / params_.nu();
  const J rho = sqrt(X * X + Z * Z);
  const J inv = reciprocal(rho);
  return to_jets(kernel<J>(*this, t, rho, X * inv, Z * inv, R, 2));
}

template <int D>
VelocityJets<2, D> ApproxSolution::torus_jets(double t, const TorPoint& pt) const {
  using J = MJet<2, D>;
  check_point(*this, pt);
  const J P = J::variable(0, pt.rho), F = J::variable(1, pt.phi);
  const J c = cos(F), s = sin(F);
  const J R = 1.0 / params_.nu() + P * c;
  return to_jets(kernel<J>(*this, t, P, c, s, R, D));
}

template VelocityJets<2, 1> ApproxSolution::torus_jets<1>(double, const TorPoint&) const;
template VelocityJets<2, 2> ApproxSolution::torus_jets<2>(double, const TorPoint&) const;
template VelocityJets<2, 3> ApproxSolution::torus_jets<3>(double, const TorPoint&) const;
template VelocityJets<2, 4> ApproxSolution::torus_jets<4>(double, const TorPoint&) const;
template VelocityJets<2, 5> ApproxSolution::torus_jets<5>(double, const TorPoint&) const;
template VelocityJets<2, 6> ApproxSolution::torus_jets<6>(double, const TorPoint&) const;

CartesianJets ApproxSolution::cartesian_jets(double t, const Vec3& x) const {
  using J = MJet<3, 2>;
  const J X = J::variable(0, x[0]), Y = J::variable(1, x[1]), Z = J::variable(2, x[2]);
  const J r = sqrt(X * X + Y * Y);
  const J inv_r = reciprocal(r);
  const J dr = r - 1.0 / params_.nu();
  const J rho = sqrt(dr * dr + Z * Z);
  const J inv_rho = reciprocal(rho);
  auto c = kernel<J>(*this, t, rho, dr * inv_rho, Z * inv_rho, r, 2);
  const J ct = X * inv_r, st = Y * inv_r;
  CartesianJets out;
  out.u[0] = c.u_r * ct - c.u_theta * st;
  out.u[1] = c.u_r * st + c.u_theta * ct;
  out.u[2] = c.u_zp + c.u_zc;
  return out;
}

namespace {

double laplacian(const MJet<2, 2>& h, double r) { return h.d2(0, 0) + h.d(0) / r + h.d2(1, 1); }

}  // namespace

ErrorParts ApproxSolution::error_parts(double t, const TorPoint& pt) const {
  check_point(*this, pt);
  ErrorParts e;
  if (!in_support(pt.rho)) return e;
  const CylPoint cp = from_toroidal(pt, params_.nu());
  const auto j = rz_jets(t, cp.r, cp.z);
  const double r = cp.r;
  const double ut = j.u_theta.value(), ur = j.u_r.value(), uzp = j.u_zp.value(), uzc = j.u_zc.value();
  const auto uz = j.u_z();
  e.eulerian = {uzc * j.u_theta.d(1) + ut * ur / r, uzc * j.u_r.d(1) - ut * ut / r,
                ur * j.u_zc.d(0) + uzp * j.u_zc.d(1) + uzc * uz.d(1)};
  e.viscous = {-(laplacian(j.u_theta, r) - ut / (r * r)), -(laplacian(j.u_r, r) - ur / (r * r)),
               -laplacian(uz, r)};
  for (int k = 0; k < 3; ++k) e.total[k] = e.eulerian[k] + e.viscous[k];
  return e;
}

Vec3 ApproxSolution::vorticity(double t, const TorPoint& pt) const {
  check_point(*this, pt);
  if (!in_support(pt.rho)) return {0, 0, 0};
  const CylPoint cp = from_toroidal(pt, params_.nu());
  const auto j = rz_jets(t, cp.r, cp.z);
  const auto uz = j.u_z();
  return {j.u_r.d(1) - uz.d(0), -j.u_theta.d(1), j.u_theta.d(0) + j.u_theta.value() / cp.r};
}

DivergenceCheck ApproxSolution::divergence(double t, const TorPoint& pt) const {
  check_point(*this, pt);
  if (!in_support(pt.rho)) return {};
  const CylPoint cp = from_toroidal(pt, params_.nu());
  const auto j = rz_jets(t, cp.r, cp.z);
  const auto uz = j.u_z();
  DivergenceCheck d;
  d.residual = j.u_r.d(0) + j.u_r.value() / cp.r + uz.d(1);
  d.gradient_scale = std::sqrt(j.u_r.d(0) * j.u_r.d(0) + j.u_r.d(1) * j.u_r.d(1) + uz.d(0) * uz.d(0) +
                               uz.d(1) * uz.d(1) + std::pow(j.u_r.value() / cp.r, 2));
  return d;
}

StationaryResidual ApproxSolution::stationary_residual(const TorPoint& pt, double fd_step) const {
  check_point(*this, pt);
  StationaryResidual res;
  res.scale = pressure_gradient_sup_;
  const CylPoint cp = from_toroidal(pt, params_.nu());
  const auto j = rz_jets(0.0, cp.r, cp.z);
  const double ur = j.u_r.value(), uzp = j.u_zp.value();
  // Pressure gradient from the quadrature table by a sixth-order central difference.
  const double h = fd_step > 0 ? fd_step : 1e-4 / params_.mu();
  const auto P = [&](int k) { return pressure(pt.rho + k * h); };
  const double dp = (-P(-3) + 9 * P(-2) - 45 * P(-1) + 45 * P(1) - 9 * P(2) + P(3)) / (60 * h);
  res.r = ur * j.u_r.d(0) + uzp * j.u_r.d(1) + dp * std::cos(pt.phi);
  res.z = ur * j.u_zp.d(0) + uzp * j.u_zp.d(1) + dp * std::sin(pt.phi);
  return res;
}

double ApproxSolution::net_shear(double t, double rho) const {
  const Expr phase = affine(-t * A_ * params_.mu(), Expr::zeta(1.0, 0, params_.mu()), 0.0) +
                     Expr::zeta(params_.eps(), params_.N(), params_.mu());
  return taylor_eval(phase, rho, 1)[1];
}

Vec3 ApproxSolution::point_value(double t, const CylPoint& cp, Quantity q) const {
  const ToroidalResult tr = to_toroidal(cp, params_.nu());
  const TorPoint& pt = tr.pt;
  if (q == Quantity::Pressure) return {pressure(pt.rho), 0, 0};
  if (!in_support(pt.rho)) return {0, 0, 0};
  switch (q) {
    case Quantity::Velocity:
      return velocity(t, pt);
    case Quantity::VelocityDt:
      return {eval_swirl_dt(t, pt), 0, 0};
    case Quantity::Error:
      return error_parts(t, pt).total;
    case Quantity::ErrorEulerian:
      return error_parts(t, pt).eulerian;
    case Quantity::ErrorViscous:
      return error_parts(t, pt).viscous;
    case Quantity::Vorticity:
      return vorticity(t, pt);
    case Quantity::Pressure:
      break;
  }
  return {0, 0, 0};
}

namespace {

std::vector<std::string> names_for(Quantity q) {
  switch (q) {
    case Quantity::Velocity: return {"u_theta", "u_r", "u_z"};
    case Quantity::VelocityDt: return {"dt_u_theta"};
    case Quantity::Error: return {"E_theta", "E_r", "E_z"};
    case Quantity::ErrorEulerian: return {"Ee_theta", "Ee_r", "Ee_z"};
    case Quantity::ErrorViscous: return {"Ev_theta", "Ev_r", "Ev_z"};
    case Quantity::Vorticity: return {"w_theta", "w_r", "w_z"};
    case Quantity::Pressure: return {"p"};
  }
  return {};
}

}  // namespace

AxiField ApproxSolution::sample(double t, const AxiGrid& grid, Quantity q) const {
  require_chart();
  const double mu = params_.mu();
  if (grid.nr <= 0 || grid.nz <= 0) throw ResolutionError("empty AxiGrid");
  if (1.0 / (mu * grid.dr) < 16.0 - 1e-9 || 1.0 / (mu * grid.dz) < 16.0 - 1e-9)
    throw ResolutionError("AxiGrid needs at least 16 nodes per 1/mu");
  AxiField out;
  out.grid = grid;
  out.time = t;
  out.names = names_for(q);
  out.components.assign(out.names.size(), std::vector<double>(grid.size(), 0.0));
  detail::parallel_for(grid.nr, [&](long i) {
    for (int j = 0; j < grid.nz; ++j) {
      const Vec3 v = point_value(t, {0.0, grid.r(i), grid.z(j)}, q);
      for (std::size_t c = 0; c < out.names.size(); ++c) out.components[c][grid.index(i, j)] = v[c];
    }
  });
  return out;
}

SpectralField ApproxSolution::sample(double t, const CartGrid& grid, Quantity q) const {
  require_chart();
  const double mu = params_.mu(), nu = params_.nu();
  for (int a = 0; a < 3; ++a)
    if (grid.nyquist(a) < 4.0 * mu * (1 - 1e-12))
      throw ResolutionError("Cartesian grid: Nyquist wavenumber below 4 mu on axis " + std::to_string(a));
  const double ext_xy = 1.0 / nu + 2.0 / mu, ext_z = 2.0 / mu;
  if (2.0 * ext_xy > 0.5 * grid.L[0] || 2.0 * ext_xy > 0.5 * grid.L[1] || 2.0 * ext_z > 0.5 * grid.L[2])
    throw SupportError("field support exceeds half the periodic box on some axis");
  const bool scalar = q == Quantity::Pressure || q == Quantity::VelocityDt;
  SpectralField out = SpectralField::zeros(grid, scalar ? 1 : 3);
  out.time = t;
  const int nx = grid.n[0], ny = grid.n[1], nz = grid.n[2];
  detail::parallel_for(nx, [&](long i) {
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        const CylPoint cp = to_cylindrical({grid.coord(0, i), grid.coord(1, j), grid.coord(2, k)});
        const std::size_t idx = (static_cast<std::size_t>(i) * ny + j) * nz + k;
        if (q != Quantity::Pressure) {
          const double rho = std::hypot(cp.r - 1.0 / nu, cp.z);
          if (!in_support(rho)) continue;
        }
        const Vec3 v = point_value(t, cp, q);
        if (scalar) {
          out.components[0][idx] = v[0];
        } else {
          const Vec3 c = cyl_to_cartesian(cp.theta, v[0], v[1], v[2]);
          for (int a = 0; a < 3; ++a) out.components[a][idx] = c[a];
        }
      }
  });
  return out;
}

AxiGrid ApproxSolution::support_grid(int nodes_per_scale) const {
  const double mu = params_.mu(), nu = params_.nu();
  const double h = 1.0 / (mu * nodes_per_scale);
  const double margin = 1.0 / mu;
  AxiGrid g;
  g.r0 = std::max(0.0, 1.0 / nu - 2.0 / mu - margin);
  g.z0 = -2.0 / mu - margin;
  g.dr = g.dz = h;
  g.nr = static_cast<int>(std::ceil((1.0 / nu + 2.0 / mu + margin - g.r0) / h)) + 1;
  g.nz = static_cast<int>(std::ceil((2.0 * (2.0 / mu + margin)) / h)) + 1;
  return g;
}

CartGrid ApproxSolution::cartesian_grid(double box_factor, double nyquist_factor) const {
  const double mu = params_.mu(), nu = params_.nu();
  CartGrid g;
  g.L[0] = g.L[1] = box_factor * 2.0 * (1.0 / nu + 2.0 / mu);
  g.L[2] = box_factor * 4.0 / mu;
  for (int a = 0; a < 3; ++a) g.n[a] = fft_friendly_size(static_cast<int>(std::ceil(nyquist_factor * mu * g.L[a] / M_PI)));
  return g;
}

}  // namespace inflab
