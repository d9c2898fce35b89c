#include "inflab/transport.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "inflab/errors.hpp"
#include "parallel.hpp"

namespace inflab {
namespace {

struct State {
  double rho, phi;
};

/// Backward velocity in the (rho, phi) chart: minus (rho', phi') of the vortex.
State minus_velocity(const ApproxSolution& sol, const State& x) {
  if (!sol.in_support(x.rho)) return {0.0, 0.0};
  const StationaryVelocity v = sol.eval_ur_uz({x.rho, x.phi});
  const double c = std::cos(x.phi), s = std::sin(x.phi);
  return {-(v.u_r * c + v.u_zp * s), -(v.u_zp * c - v.u_r * s) / x.rho};
}

State rk4(const ApproxSolution& sol, State x, double duration, int steps) {
  const double h = duration / steps;
  for (int n = 0; n < steps; ++n) {
    const State k1 = minus_velocity(sol, x);
    const State k2 = minus_velocity(sol, {x.rho + 0.5 * h * k1.rho, x.phi + 0.5 * h * k1.phi});
    const State k3 = minus_velocity(sol, {x.rho + 0.5 * h * k2.rho, x.phi + 0.5 * h * k2.phi});
    const State k4 = minus_velocity(sol, {x.rho + h * k3.rho, x.phi + h * k3.phi});
    x.rho += h / 6.0 * (k1.rho + 2 * k2.rho + 2 * k3.rho + k4.rho);
    x.phi += h / 6.0 * (k1.phi + 2 * k2.phi + 2 * k3.phi + k4.phi);
  }
  return x;
}

/// Starting step count: about 0.25 rad of rotation per step.
int initial_steps(const ApproxSolution& sol, double rho, double duration) {
  const double omega = std::fabs(sol.angular_velocity(rho));
  return std::max(4, static_cast<int>(std::ceil(omega * duration / 0.25)));
}

/// Integrates one segment with step doubling; returns the end point and the steps used.
State segment(const ApproxSolution& sol, const State& start, double duration, double rho, const CharacteristicOptions& opts,
           int& used) {
  if (duration == 0.0) {
    used = 0;
    return start;
  }
  int n = initial_steps(sol, rho, duration);
  State coarse = rk4(sol, start, duration, n);
  while (true) {
    if (2 * n > opts.max_steps) throw StepError("characteristic integration did not reach the phase tolerance");
    State fine = rk4(sol, start, duration, 2 * n);
    const double scale = std::max(rho, 1e-300);
    if (std::hypot((fine.rho - coarse.rho) / scale, fine.phi - coarse.phi) < opts.phase_tol) {
      used = 2 * n;
      return fine;
    }
    coarse = fine;
    n *= 2;
  }
}

}  // namespace

TorPoint ring_rotation(const ApproxSolution& sol, const TorPoint& pt, double t) {
  if (!sol.in_support(pt.rho)) return pt;
  return {pt.rho, pt.phi + sol.angular_velocity(pt.rho) * t};
}

FlowMap backward_characteristics(const ApproxSolution& sol, const std::vector<TorPoint>& pts, double t,
                                 const CharacteristicOptions& opts) {
  FlowMap map;
  map.t = t;
  map.targets = pts;
  map.feet.resize(pts.size());
  std::vector<int> used(pts.size(), 0);
  detail::parallel_for(static_cast<long>(pts.size()), [&](long i) {
    const State end = segment(sol, {pts[i].rho, pts[i].phi}, t, pts[i].rho, opts, used[i]);
    map.feet[i] = {end.rho, end.phi};
  });
  for (int u : used) map.steps = std::max(map.steps, u);
  return map;
}

std::vector<std::vector<double>> advect(const ApproxSolution& sol, const Datum& datum, const std::vector<double>& times,
                                        const std::vector<TorPoint>& pts, const CharacteristicOptions& opts) {
  for (std::size_t k = 0; k < times.size(); ++k)
    if (times[k] < 0 || (k > 0 && times[k] < times[k - 1]))
      throw StepError("advect: times must be non-negative and increasing");
  std::vector<std::vector<double>> out(times.size(), std::vector<double>(pts.size(), 0.0));
  detail::parallel_for(static_cast<long>(pts.size()), [&](long i) {
    State x{pts[i].rho, pts[i].phi};
    double t_prev = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      int used = 0;
      x = segment(sol, x, times[k] - t_prev, pts[i].rho, opts, used);
      t_prev = times[k];
      out[k][i] = datum({x.rho, x.phi});
    }
  });
  return out;
}

std::vector<double> advect(const ApproxSolution& sol, const Datum& datum, double t, const std::vector<TorPoint>& pts,
                           const CharacteristicOptions& opts) {
  return advect(sol, datum, std::vector<double>{t}, pts, opts).front();
}

std::vector<GrowthSample> growth_curve(const ApproxSolution& sol, const std::vector<double>& times,
                                       const GrowthOptions& opts) {
  const double mu = sol.params().mu(), nu = sol.params().nu();
  const Exponent p = sol.params().p();
  // The swirl lives on mu rho in [1, 3/2].
  const double lo = 1.0 / mu, hi = 1.5 / mu;
  const double drho = (hi - lo) / (opts.n_rho - 1);
  const double dphi = 2.0 * M_PI / opts.n_phi;
  std::vector<GrowthSample> out;
  for (double t : times) {
    GrowthSample gs;
    gs.t = t;
    double acc = 0, sup = 0, umax = 0;
#pragma omp parallel for reduction(max : sup, umax) reduction(+ : acc)
    for (int i = 0; i < opts.n_rho; ++i) {
      const double rho = lo + i * drho;
      // d/drho Im(e^{i phi} K) = Im(e^{i phi} K').
      std::complex<double> K(0.0), dK(0.0);
      if (sol.in_support(rho)) {
        const ComplexJet jet = sol.swirl_envelope_jet(t, rho, 1);
        K = jet[0];
        dK = jet[1];
      }
      const double w = (i == 0 || i == opts.n_rho - 1) ? 0.5 : 1.0;
      for (int j = 0; j < opts.n_phi; ++j) {
        const double phi = j * dphi;
        const double sp = std::sin(phi), cp = std::cos(phi);
        sup = std::max(sup, std::fabs(sp * dK.real() + cp * dK.imag()));
        const double u = std::fabs(sp * K.real() + cp * K.imag());
        umax = std::max(umax, u);
        if (!p.is_infinite()) acc += w * std::pow(u, p.value()) * (1.0 / nu + rho * cp) * rho;
      }
    }
    gs.dmax = sup;
    gs.lp = p.is_infinite() ? umax : std::pow(acc * 2.0 * M_PI * drho * dphi, 1.0 / p.value());
    out.push_back(gs);
  }
  return out;
}

void write_growth_csv(std::ostream& out, const std::vector<GrowthSample>& curve) {
  out << "t,dmax,lp\n";
  char buf[128];
  for (const auto& g : curve) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.t, g.dmax, g.lp);
    out << buf;
  }
}

}  // namespace inflab
