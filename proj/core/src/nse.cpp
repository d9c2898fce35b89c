#include "inflab/nse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "inflab/errors.hpp"
#include "inflab/io.hpp"

namespace inflab {
namespace {

using Modes = std::array<std::vector<cplx>, 3>;

/// Per-mode wavevector components and the r2c multiplicity.
struct WaveTable {
  std::vector<double> kx, ky, kz, mult;
  explicit WaveTable(const CartGrid& g) {
    const int n0 = g.n[0], n1 = g.n[1], n2 = g.n[2], h2 = n2 / 2 + 1;
    const std::size_t ns = g.spectral_size();
    kx.resize(ns);
    ky.resize(ns);
    kz.resize(ns);
    mult.resize(ns);
    for (int i = 0; i < n0; ++i)
      for (int j = 0; j < n1; ++j)
        for (int k = 0; k < h2; ++k) {
          const std::size_t idx = (static_cast<std::size_t>(i) * n1 + j) * h2 + k;
          kx[idx] = g.wavenumber(0, i);
          ky[idx] = g.wavenumber(1, j);
          kz[idx] = g.wavenumber(2, k);
          mult[idx] = (k == 0 || k == n2 / 2) ? 1.0 : 2.0;
        }
  }
};

Modes to_modes(const SpectralField& f) {
  if (f.ncomp() != 3) throw RangeError("expected a 3-component field");
  return {f.fourier(0), f.fourier(1), f.fourier(2)};
}

SpectralField from_modes(const CartGrid& g, const Modes& m, double t) {
  SpectralField f = SpectralField::zeros(g, 3);
  f.time = t;
  for (int c = 0; c < 3; ++c) f.set_from_fourier(c, m[c]);
  return f;
}

/// Modes with index n/2 on an even axis. Their conjugate partner is the mode
/// itself, so no real field carries an odd derivative of them.
bool on_nyquist_plane(const CartGrid& g, std::size_t idx) {
  const std::size_t h2 = g.n[2] / 2 + 1;
  const std::size_t k = idx % h2, j = (idx / h2) % g.n[1], i = idx / (h2 * g.n[1]);
  return (g.n[0] % 2 == 0 && i == static_cast<std::size_t>(g.n[0] / 2)) ||
         (g.n[1] % 2 == 0 && j == static_cast<std::size_t>(g.n[1] / 2)) ||
         (g.n[2] % 2 == 0 && k == static_cast<std::size_t>(g.n[2] / 2));
}

void project(const CartGrid& g, Modes& m, const std::vector<double>& kx, const std::vector<double>& ky,
             const std::vector<double>& kz) {
  const std::size_t ns = m[0].size();
  for (std::size_t i = 0; i < ns; ++i) {
    if (on_nyquist_plane(g, i)) {
      m[0][i] = m[1][i] = m[2][i] = 0.0;
      continue;
    }
    const double k2 = kx[i] * kx[i] + ky[i] * ky[i] + kz[i] * kz[i];
    if (k2 == 0.0) continue;
    const cplx d = (kx[i] * m[0][i] + ky[i] * m[1][i] + kz[i] * m[2][i]) / k2;
    m[0][i] -= kx[i] * d;
    m[1][i] -= ky[i] * d;
    m[2][i] -= kz[i] * d;
  }
}

double divergence_of(const Modes& m, const std::vector<double>& kx, const std::vector<double>& ky,
                     const std::vector<double>& kz) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < m[0].size(); ++i) {
    num = std::max(num, std::abs(kx[i] * m[0][i] + ky[i] * m[1][i] + kz[i] * m[2][i]));
    const double k = std::sqrt(kx[i] * kx[i] + ky[i] * ky[i] + kz[i] * kz[i]);
    den = std::max(den, k * std::sqrt(std::norm(m[0][i]) + std::norm(m[1][i]) + std::norm(m[2][i])));
  }
  return den > 0 ? num / den : 0.0;
}

}  // namespace

SpectralField project_div_free(const SpectralField& field) {
  const WaveTable w(field.grid);
  Modes m = to_modes(field);
  project(field.grid, m, w.kx, w.ky, w.kz);
  return from_modes(field.grid, m, field.time);
}

double divergence_residual(const SpectralField& field) {
  const WaveTable w(field.grid);
  return divergence_of(to_modes(field), w.kx, w.ky, w.kz);
}

SpectralField curl(const SpectralField& field) {
  const WaveTable w(field.grid);
  const Modes u = to_modes(field);
  const std::vector<double>* k[3] = {&w.kx, &w.ky, &w.kz};
  const cplx I(0.0, 1.0);
  Modes out;
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    out[c].resize(u[c].size());
    for (std::size_t i = 0; i < u[c].size(); ++i)
      out[c][i] = on_nyquist_plane(field.grid, i) ? 0.0 : I * ((*k[a])[i] * u[b][i] - (*k[b])[i] * u[a][i]);
  }
  return from_modes(field.grid, out, field.time);
}

NseSolver::NseSolver(const CartGrid& grid) : grid_(grid) {
  const WaveTable w(grid);
  kx_ = w.kx;
  ky_ = w.ky;
  kz_ = w.kz;
  mult_ = w.mult;
  const std::size_t ns = grid.spectral_size();
  k2_.resize(ns);
  keep_.resize(ns);
  const double cx = 2.0 / 3.0 * grid.nyquist(0), cy = 2.0 / 3.0 * grid.nyquist(1), cz = 2.0 / 3.0 * grid.nyquist(2);
  for (std::size_t i = 0; i < ns; ++i) {
    k2_[i] = kx_[i] * kx_[i] + ky_[i] * ky_[i] + kz_[i] * kz_[i];
    keep_[i] = std::fabs(kx_[i]) < cx && std::fabs(ky_[i]) < cy && std::fabs(kz_[i]) < cz;
  }
  for (auto& c : uh_) c.assign(ns, cplx(0.0));
}

void NseSolver::set_state(const SpectralField& u) {
  if (u.grid != grid_) throw RangeError("set_state: grid mismatch");
  uh_ = to_modes(u);
  project(grid_, uh_, kx_, ky_, kz_);
  time_ = u.time;
  initial_max_ = max_velocity();
}

SpectralField NseSolver::state() const { return from_modes(grid_, uh_, time_); }

Modes NseSolver::nonlinear(const Modes& u, double* umax) const {
  const std::size_t ns = grid_.spectral_size(), nr = grid_.size();
  auto fft = Fft::get(grid_.n);
  std::array<std::vector<double>, 3> up, wp;
  std::vector<cplx> tmp(ns);
  const std::vector<double>* k[3] = {&kx_, &ky_, &kz_};
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < ns; ++i) tmp[i] = keep_[i] ? u[c][i] : cplx(0.0);
    up[c].resize(nr);
    fft->backward(tmp.data(), up[c].data());
  }
  // omega = i xi x u
  const cplx I(0.0, 1.0);
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    for (std::size_t i = 0; i < ns; ++i)
      tmp[i] = keep_[i] ? I * ((*k[a])[i] * u[b][i] - (*k[b])[i] * u[a][i]) : cplx(0.0);
    wp[c].resize(nr);
    fft->backward(tmp.data(), wp[c].data());
  }
  double m = 0;
  std::array<std::vector<double>, 3> prod;
  for (auto& p : prod) p.resize(nr);
#pragma omp parallel for reduction(max : m)
  for (std::size_t i = 0; i < nr; ++i) {
    const double u0 = up[0][i], u1 = up[1][i], u2 = up[2][i];
    prod[0][i] = u1 * wp[2][i] - u2 * wp[1][i];
    prod[1][i] = u2 * wp[0][i] - u0 * wp[2][i];
    prod[2][i] = u0 * wp[1][i] - u1 * wp[0][i];
    m = std::max(m, u0 * u0 + u1 * u1 + u2 * u2);
  }
  if (umax) *umax = std::sqrt(m);
  Modes out;
  for (int c = 0; c < 3; ++c) {
    out[c].resize(ns);
    fft->forward(prod[c].data(), out[c].data());
    for (std::size_t i = 0; i < ns; ++i)
      if (!keep_[i]) out[c][i] = 0.0;
  }
  project(grid_, out, kx_, ky_, kz_);
  return out;
}

Modes NseSolver::rhs(const Modes& u) const {
  Modes out = nonlinear(u, nullptr);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < out[c].size(); ++i) out[c][i] -= k2_[i] * u[c][i];
  return out;
}

double NseSolver::energy_of(const Modes& u, bool gradient) const {
  const double vol = grid_.L[0] * grid_.L[1] * grid_.L[2];
  double e = 0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < u[c].size(); ++i) e += mult_[i] * (gradient ? k2_[i] : 1.0) * std::norm(u[c][i]);
  return e * vol;
}

double NseSolver::energy() const { return energy_of(uh_, false); }
double NseSolver::enstrophy() const { return energy_of(uh_, true); }

double NseSolver::max_velocity() const { return state().max_abs(); }

std::array<cplx, 3> NseSolver::mean() const { return {uh_[0][0], uh_[1][0], uh_[2][0]}; }

StepDiagnostics NseSolver::step(double dt, bool diagnostics) {
  const std::size_t ns = grid_.spectral_size();
  std::vector<double> E(ns), Eh(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    E[i] = std::exp(-k2_[i] * dt);
    Eh[i] = std::exp(-0.5 * k2_[i] * dt);
  }
  StepDiagnostics diag;
  double umax = 0;
  const Modes k1 = nonlinear(uh_, &umax);
  diag.max_velocity = umax;
  if (initial_max_ > 0 && umax > blowup_factor * initial_max_)
    throw BlowupError("max |u| exceeded " + format_double(blowup_factor) + " times its initial value at t = " +
                      format_double(time_));
  if (!std::isfinite(umax)) throw BlowupError("non-finite velocity at t = " + format_double(time_));

  Modes stage;
  for (auto& c : stage) c.resize(ns);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < ns; ++i) stage[c][i] = Eh[i] * (uh_[c][i] + 0.5 * dt * k1[c][i]);
  const Modes k2 = nonlinear(stage, nullptr);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < ns; ++i) stage[c][i] = Eh[i] * uh_[c][i] + 0.5 * dt * k2[c][i];
  const Modes k3 = nonlinear(stage, nullptr);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < ns; ++i) stage[c][i] = E[i] * uh_[c][i] + dt * Eh[i] * k3[c][i];
  const Modes k4 = nonlinear(stage, nullptr);

  Modes mid;
  if (diagnostics) {
    diag.energy_before = energy_of(uh_, false);
    for (auto& c : mid) c.resize(ns);
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < ns; ++i)
        mid[c][i] = Eh[i] * uh_[c][i] + dt * (5.0 / 24.0 * Eh[i] * k1[c][i] + (k2[c][i] + k3[c][i]) / 6.0 -
                                              (Eh[i] > 0 ? k4[c][i] / (24.0 * Eh[i]) : cplx(0.0)));
  }
  const double d0 = diagnostics ? energy_of(uh_, true) : 0.0;

  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < ns; ++i)
      uh_[c][i] = E[i] * uh_[c][i] +
                  dt / 6.0 * (E[i] * k1[c][i] + 2.0 * Eh[i] * (k2[c][i] + k3[c][i]) + k4[c][i]);
  time_ += dt;

  if (diagnostics) {
    diag.energy_after = energy_of(uh_, false);
    const double d1 = energy_of(uh_, true), dm = energy_of(mid, true);
    diag.dissipated = 2.0 * dt / 6.0 * (d0 + 4.0 * dm + d1);
    diag.balance_residual = diag.energy_before > 0
                                ? std::fabs(diag.energy_after - diag.energy_before + diag.dissipated) / diag.energy_before
                                : 0.0;
  }
  return diag;
}

SpectralField step(const SpectralField& state, double dt) {
  NseSolver solver(state.grid);
  solver.set_state(state);
  solver.step(dt);
  return solver.state();
}

ForcingCheck forcing_check(const ApproxSolution& sol, double t, const CartGrid& grid) {
  const SpectralField ubar = sol.sample(t, grid, Quantity::Velocity);
  const SpectralField swirl_dt = sol.sample(t, grid, Quantity::VelocityDt);
  const SpectralField err = sol.sample(t, grid, Quantity::Error);
  // d_t ubar = (d_t u_theta) e_theta.
  SpectralField dt_u = SpectralField::zeros(grid, 3);
  for (int i = 0; i < grid.n[0]; ++i)
    for (int j = 0; j < grid.n[1]; ++j) {
      const double x = grid.coord(0, i), y = grid.coord(1, j), r = std::hypot(x, y);
      if (r == 0.0) continue;
      for (int k = 0; k < grid.n[2]; ++k) {
        const std::size_t idx = (static_cast<std::size_t>(i) * grid.n[1] + j) * grid.n[2] + k;
        dt_u.components[0][idx] = -y / r * swirl_dt.components[0][idx];
        dt_u.components[1][idx] = x / r * swirl_dt.components[0][idx];
      }
    }
  NseSolver solver(grid);
  const WaveTable w(grid);
  const Modes u = to_modes(ubar);
  const Modes rhs = solver.rhs(u);
  Modes res = to_modes(dt_u);
  Modes e = to_modes(err);
  project(grid, res, w.kx, w.ky, w.kz);
  project(grid, e, w.kx, w.ky, w.kz);
  const double vol = grid.L[0] * grid.L[1] * grid.L[2];
  ForcingCheck out;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < res[c].size(); ++i) {
      res[c][i] -= rhs[c][i];
      out.residual_l2 += w.mult[i] * std::norm(res[c][i]);
      out.error_l2 += w.mult[i] * std::norm(e[c][i]);
      out.difference_l2 += w.mult[i] * std::norm(res[c][i] - e[c][i]);
    }
  out.residual_l2 = std::sqrt(out.residual_l2 * vol);
  out.error_l2 = std::sqrt(out.error_l2 * vol);
  out.difference_l2 = std::sqrt(out.difference_l2 * vol);
  return out;
}

double solver_memory_estimate(const CartGrid& grid) {
  // State, four stages, one stage buffer, three product spectra, scratch: 27
  // complex spectral arrays; nine real arrays; k^2, mask and the wave table.
  const double ns = static_cast<double>(grid.spectral_size()), nr = static_cast<double>(grid.size());
  return 27.0 * 16.0 * ns + 9.0 * 8.0 * nr + 5.0 * 8.0 * ns + ns;
}

void SolveTrace::write_csv(std::ostream& out) const {
  out << "t,l2_u,l2_ubar,l2_w,linf_u,linf_ubar,linf_w,besov_u,besov_ubar,boundary_ratio,divergence\n";
  for (const auto& p : probes) {
    const double row[] = {p.t,      p.l2_u,       p.l2_ubar,         p.l2_w,   p.linf_u,  p.linf_ubar,
                          p.linf_w, p.besov_u, p.besov_ubar, p.boundary_ratio, p.divergence};
    for (std::size_t i = 0; i < std::size(row); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

SolveTrace solve_and_compare(const ApproxSolution& sol, const SolveSpec& spec) {
  const ParameterSet& P = sol.params();
  if (spec.t_end < 0 || spec.t_end > P.t_star() * (1 + 1e-12))
    throw RangeError("solve: t_end must lie in [0, t_star]");
  CartGrid grid = spec.grid;
  if (grid.n[0] == 0 || grid.n[1] == 0 || grid.n[2] == 0) grid = sol.cartesian_grid(4.0, 6.0);
  if (solver_memory_estimate(grid) > spec.memory_cap_bytes)
    throw ResolutionError("solve: estimated memory " + format_double(solver_memory_estimate(grid)) +
                          " bytes exceeds the cap " + format_double(spec.memory_cap_bytes));

  std::vector<double> probes;
  for (double t : spec.probes)
    if (t >= 0 && t <= spec.t_end) probes.push_back(t);
  probes.push_back(spec.t_end);
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  SolveTrace trace;
  trace.grid = grid;
  NseSolver solver(grid);
  const WaveTable waves(grid);
  solver.set_state(sol.sample(0.0, grid, Quantity::Velocity));
  const double hmin = std::min({grid.h(0), grid.h(1), grid.h(2)});
  const Exponent p = P.p();
  BesovOptions readout;
  readout.check = false;

  {
    const auto [b1, rep] = besov_norm(solver.state(), P.s(), p, Exponent::finite(1.0), readout);
    trace.inflation_initial = b1;
  }

  double umax = solver.max_velocity();
  int snap = 0;
  for (double target : probes) {
    while (solver.time() < target * (1 - 1e-14) && target - solver.time() > 1e-300) {
      double dt = spec.dt > 0 ? spec.dt : spec.cfl * hmin / std::max(umax, 1e-300);
      dt = std::min(dt, target - solver.time());
      const StepDiagnostics d = solver.step(dt);
      umax = d.max_velocity;
      trace.step_times.push_back(solver.time());
      trace.step_dt.push_back(dt);
      trace.step_umax.push_back(umax);
    }
    solver.set_time(target);
    const SpectralField u = solver.state();
    const SpectralField ubar = sol.sample(target, grid, Quantity::Velocity);
    SpectralField w = u;
    for (int c = 0; c < 3; ++c)
      for (std::size_t i = 0; i < w.components[c].size(); ++i) w.components[c][i] -= ubar.components[c][i];
    ProbeRecord rec;
    rec.t = target;
    rec.l2_u = lebesgue_norm(u, Exponent::finite(2.0));
    rec.l2_ubar = lebesgue_norm(ubar, Exponent::finite(2.0));
    rec.l2_w = lebesgue_norm(w, Exponent::finite(2.0));
    rec.linf_u = lebesgue_norm(u, Exponent::infinity());
    rec.linf_ubar = lebesgue_norm(ubar, Exponent::infinity());
    rec.linf_w = lebesgue_norm(w, Exponent::infinity());
    rec.divergence = divergence_of(solver.modes(), waves.kx, waves.ky, waves.kz);
    const NormReport ru = dyadic_report(u, p, readout);
    rec.boundary_ratio = ru.meta.boundary_ratio;
    if (spec.alias_check && ru.meta.tail_fraction > 0.01)
      throw AliasError("solve: solution spectrum not decayed at t = " + format_double(target) + " (tail fraction " +
                       format_double(ru.meta.tail_fraction) + ")");
    if (spec.besov_probes) {
      rec.besov_u = besov_norm(u, P.s(), p, Exponent::infinity(), readout).first;
      rec.besov_ubar = besov_norm(ubar, P.s(), p, Exponent::infinity(), readout).first;
    } else {
      rec.besov_u = rec.besov_ubar = std::nan("");
    }
    trace.probes.push_back(rec);
    if (!spec.snapshot_dir.empty() && snap++ % std::max(1, spec.snapshot_every) == 0) {
      char name[64];
      std::snprintf(name, sizeof name, "/u_%06zu.nifs", trace.probes.size() - 1);
      write_nifs(spec.snapshot_dir + name, u);
    }
  }
  trace.inflation_final = spec.besov_probes
                              ? trace.probes.back().besov_u
                              : besov_norm(solver.state(), P.s(), p, Exponent::infinity(), readout).first;
  return trace;
}

}  // namespace inflab
