#include "inflab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "inflab/errors.hpp"
#include "parallel.hpp"

namespace inflab {
namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double power_sum(const std::vector<double>& values, double q) {
  double acc = 0;
  for (double v : values) acc += std::pow(std::fabs(v), q);
  return acc;
}

}  // namespace

double lebesgue_norm(const std::vector<double>& values, double cell, Exponent q) {
  if (q.is_infinite()) {
    double m = 0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
  }
  const double qq = q.value();
  if (qq == 2.0) {
    double acc = 0;
    for (double v : values) acc += v * v;
    return std::sqrt(acc * cell);
  }
  if (qq == 1.0) {
    double acc = 0;
    for (double v : values) acc += std::fabs(v);
    return acc * cell;
  }
  return std::pow(power_sum(values, qq) * cell, 1.0 / qq);
}

double lebesgue_norm(const SpectralField& field, Exponent q) {
  return lebesgue_norm(field.magnitude(), field.grid.cell_volume(), q);
}

double lebesgue_norm(const AxiField& field, Exponent q) {
  const auto mag = field.magnitude();
  if (q.is_infinite()) return lebesgue_norm(mag, 1.0, q);
  const AxiGrid& g = field.grid;
  const double qq = q.value();
  double acc = 0;
  for (int i = 0; i < g.nr; ++i) {
    const double wr = (i == 0 || i == g.nr - 1) ? 0.5 : 1.0;
    const double r = std::fabs(g.r(i));
    for (int j = 0; j < g.nz; ++j) {
      const double wz = (j == 0 || j == g.nz - 1) ? 0.5 : 1.0;
      acc += wr * wz * r * std::pow(std::fabs(mag[g.index(i, j)]), qq);
    }
  }
  return std::pow(acc * 2.0 * M_PI * g.dr * g.dz, 1.0 / qq);
}

namespace {

template <int D>
double torus_bound(const ApproxSolution& sol, double t, const TorPoint& pt) {
  const auto jets = sol.torus_jets<D>(t, pt);
  const MJet<2, D>* comps[3] = {&jets.u_theta, &jets.u_r, nullptr};
  const MJet<2, D> uz = jets.u_z();
  comps[2] = &uz;
  double acc = 0;
  for (const auto* c : comps) {
    TorusPartials part(D);
    for (int i = 0; i <= D; ++i)
      for (int j = 0; i + j <= D; ++j) part(i, j) = c->partial({i, j});
    const double b = grad_from_torus(part, pt, D).bound;
    acc += b * b;
  }
  return std::sqrt(acc);
}

double point_gradient(const ApproxSolution& sol, double t, int k, double r, double z) {
  const TorPoint pt = to_toroidal({0.0, r, z}, sol.params().nu()).pt;
  if (k == 0) {
    const Vec3 v = sol.velocity(t, pt);
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  }
  if (k <= 2) {
    const CartesianJets j = sol.cartesian_jets(t, {r, 0.0, z});
    double acc = 0;
    for (const auto& u : j.u) {
      if (k == 1) {
        for (int b = 0; b < 3; ++b) acc += u.d(b) * u.d(b);
      } else {
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c) acc += u.d2(b, c) * u.d2(b, c);
      }
    }
    return std::sqrt(acc);
  }
  switch (k) {
    case 3: return torus_bound<3>(sol, t, pt);
    case 4: return torus_bound<4>(sol, t, pt);
    case 5: return torus_bound<5>(sol, t, pt);
    case 6: return torus_bound<6>(sol, t, pt);
    default: break;
  }
  throw OrderError("sobolev_norm supports k <= 6");
}

}  // namespace

SobolevValue sobolev_norm(const ApproxSolution& sol, double t, int k, Exponent q, const AxiGrid& grid) {
  if (k < 0 || k > 6) throw OrderError("sobolev_norm supports 0 <= k <= 6");
  sol.require_chart();
  const double nu = sol.params().nu();
  AxiField field;
  field.grid = grid;
  field.time = t;
  field.names = {"grad_k"};
  field.components.assign(1, std::vector<double>(grid.size(), 0.0));
  detail::parallel_for(grid.nr, [&](long i) {
    for (int j = 0; j < grid.nz; ++j) {
      const double r = grid.r(i), z = grid.z(j);
      if (!sol.in_support(std::hypot(r - 1.0 / nu, z))) continue;
      field.components[0][grid.index(i, j)] = point_gradient(sol, t, k, r, z);
    }
  });
  return {lebesgue_norm(field, q), k >= 3};
}

double NormReport::centroid() const {
  double num = 0, den = 0;
  for (const auto& s : shells) {
    num += s.j * s.energy;
    den += s.energy;
  }
  return den > 0 ? num / den : 0.0;
}

double NormReport::besov_value(double s, Exponent q) const {
  double acc = 0;
  for (const auto& sh : shells) {
    const double w = std::pow(2.0, s * sh.j) * sh.lp;
    if (q.is_infinite())
      acc = std::max(acc, w);
    else
      acc += std::pow(w, q.value());
  }
  return q.is_infinite() ? acc : std::pow(acc, 1.0 / q.value());
}

void NormReport::write_csv(std::ostream& out) const {
  out << "j,shell_lp,weight,weighted\n";
  for (const auto& s : shells) out << s.j << "," << g17(s.lp) << "," << g17(s.weight) << "," << g17(s.weighted) << "\n";
}

std::string NormReport::summary_json() const {
  nlohmann::json j;
  j["p"] = p.str();
  j["centroid"] = centroid();
  for (const auto& [k, v] : lebesgue) j["lebesgue"][k] = v;
  for (const auto& [k, v] : besov) j["besov"][k] = v;
  for (const auto& [k, v] : sobolev) {
    const std::string key = std::to_string(k.first) + "," + k.second;
    j["sobolev"][key]["value"] = v;
    auto it = sobolev_bound.find(k);
    j["sobolev"][key]["bound"] = it != sobolev_bound.end() && it->second;
  }
  nlohmann::json shells_json = nlohmann::json::array();
  for (const auto& s : shells)
    shells_json.push_back({{"j", s.j}, {"modes", s.modes}, {"lp", s.lp}, {"energy", s.energy},
                           {"weight", s.weight}, {"weighted", s.weighted}, {"complete", s.complete}});
  j["shells"] = shells_json;
  j["meta"] = {{"dims", meta.grid.n},
               {"box", meta.grid.L},
               {"k_min", meta.k_min},
               {"k_max", meta.k_max},
               {"zero_mode_energy", meta.zero_mode_energy},
               {"tail_fraction", meta.tail_fraction},
               {"boundary_ratio", meta.boundary_ratio}};
  return j.dump(2);
}

namespace {

int shell_of(double k) { return std::ilogb(k * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())); }

}  // namespace

NormReport dyadic_report(const SpectralField& field, Exponent p, const BesovOptions& opts) {
  const CartGrid& g = field.grid;
  const int n0 = g.n[0], n1 = g.n[1], n2 = g.n[2], h2 = n2 / 2 + 1;
  const std::size_t ns = g.spectral_size();
  NormReport rep;
  rep.p = p;
  rep.meta.grid = g;

  // Boundary diagnostic: the faces at index 0 on each axis.
  const auto mag = field.magnitude();
  double fmax = 0, bmax = 0;
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k) {
        const double v = mag[(static_cast<std::size_t>(i) * n1 + j) * n2 + k];
        fmax = std::max(fmax, v);
        if (i == 0 || j == 0 || k == 0) bmax = std::max(bmax, v);
      }
  rep.meta.boundary_ratio = fmax > 0 ? bmax / fmax : 0.0;
  if (opts.check && rep.meta.boundary_ratio > opts.boundary_tol)
    throw SupportError("field touches the periodic box boundary (ratio " + g17(rep.meta.boundary_ratio) + ")");

  // Shell index per mode; INT_MIN marks the zero mode.
  std::vector<int> shell(ns);
  std::vector<double> mult(ns);  // r2c half-spectrum multiplicity
  int jmin = std::numeric_limits<int>::max(), jmax = std::numeric_limits<int>::min();
  double kmin = std::numeric_limits<double>::infinity(), kmax = 0;
  std::vector<char> tail(ns, 0);
  for (int i = 0; i < n0; ++i) {
    const double kx = g.wavenumber(0, i);
    for (int j = 0; j < n1; ++j) {
      const double ky = g.wavenumber(1, j);
      for (int k = 0; k < h2; ++k) {
        const double kz = g.wavenumber(2, k);
        const std::size_t idx = (static_cast<std::size_t>(i) * n1 + j) * h2 + k;
        mult[idx] = (k == 0 || k == n2 / 2) ? 1.0 : 2.0;
        const double kk = std::sqrt(kx * kx + ky * ky + kz * kz);
        tail[idx] = std::fabs(kx) > 2.0 / 3.0 * g.nyquist(0) || std::fabs(ky) > 2.0 / 3.0 * g.nyquist(1) ||
                    std::fabs(kz) > 2.0 / 3.0 * g.nyquist(2);
        if (kk == 0.0) {
          shell[idx] = std::numeric_limits<int>::min();
          continue;
        }
        const int s = shell_of(kk);
        shell[idx] = s;
        jmin = std::min(jmin, s);
        jmax = std::max(jmax, s);
        kmin = std::min(kmin, kk);
        kmax = std::max(kmax, kk);
      }
    }
  }
  rep.meta.k_min = kmin;
  rep.meta.k_max = kmax;
  const double vol = g.L[0] * g.L[1] * g.L[2];
  const double nyq_min = std::min({g.nyquist(0), g.nyquist(1), g.nyquist(2)});

  std::vector<std::vector<cplx>> hat(field.ncomp());
  for (int c = 0; c < field.ncomp(); ++c) hat[c] = field.fourier(c);

  double total = 0, tail_e = 0;
  for (int c = 0; c < field.ncomp(); ++c)
    for (std::size_t idx = 0; idx < ns; ++idx) {
      const double e = mult[idx] * std::norm(hat[c][idx]) * vol;
      if (shell[idx] == std::numeric_limits<int>::min())
        rep.meta.zero_mode_energy += e;
      else
        total += e;
      if (tail[idx]) tail_e += e;
    }
  rep.meta.tail_fraction = total > 0 ? tail_e / total : 0.0;
  if (opts.check && rep.meta.tail_fraction > opts.alias_tol)
    throw AliasError("spectrum not decayed at Nyquist: tail fraction " + g17(rep.meta.tail_fraction));
  if (jmin > jmax) return rep;

  auto fft = Fft::get(g.n);
  const int nshell = jmax - jmin + 1;
  rep.shells.resize(nshell);
  for (int s = 0; s < nshell; ++s) {
    ShellEntry& e = rep.shells[s];
    e.j = jmin + s;
    e.complete = std::ldexp(1.0, e.j) >= kmin && std::ldexp(1.0, e.j + 1) <= nyq_min;
  }
  for (std::size_t idx = 0; idx < ns; ++idx)
    if (shell[idx] != std::numeric_limits<int>::min()) rep.shells[shell[idx] - jmin].modes += 1;

#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < nshell; ++s) {
    ShellEntry& e = rep.shells[s];
    if (e.modes == 0) continue;
    std::vector<cplx> masked(ns);
    std::vector<double> phys(g.size());
    std::vector<double> m2(g.size(), 0.0);
    double energy = 0;
    for (int c = 0; c < field.ncomp(); ++c) {
      for (std::size_t idx = 0; idx < ns; ++idx) {
        if (shell[idx] == e.j) {
          masked[idx] = hat[c][idx];
          energy += mult[idx] * std::norm(hat[c][idx]) * vol;
        } else {
          masked[idx] = 0.0;
        }
      }
      fft->backward(masked.data(), phys.data());
      for (std::size_t i = 0; i < phys.size(); ++i) m2[i] += phys[i] * phys[i];
    }
    for (auto& v : m2) v = std::sqrt(v);
    e.energy = energy;
    e.lp = lebesgue_norm(m2, g.cell_volume(), p);
    e.weighted = e.lp;
  }
  return rep;
}

std::pair<double, NormReport> besov_norm(const SpectralField& field, double s, Exponent p, Exponent q,
                                         const BesovOptions& opts) {
  NormReport rep = dyadic_report(field, p, opts);
  for (auto& e : rep.shells) {
    e.weight = std::pow(2.0, s * e.j);
    e.weighted = e.weight * e.lp;
  }
  const double value = rep.besov_value(s, q);
  rep.besov[g17(s) + "," + p.str() + "," + q.str()] = value;
  return {value, rep};
}

}  // namespace inflab
