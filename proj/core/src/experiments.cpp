#include "inflab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "inflab/errors.hpp"
#include "inflab/norms.hpp"
#include "inflab/transport.hpp"
#include "json.hpp"

namespace inflab {
namespace {

template <class T>
std::vector<T> or_base(const std::vector<T>& v, T base) {
  return v.empty() ? std::vector<T>{base} : v;
}

/// Key of a parameter set with one field left out, for grouping scans.
std::string group_key(const ParameterSet& ps, const std::string& free) {
  std::ostringstream k;
  k << "s=" << format_double(ps.s()) << ";p=" << ps.p().str() << ";b=" << format_double(ps.b()) << ";N=" << ps.N();
  if (free != "eps") k << ";eps=" << format_double(ps.eps());
  if (free != "mu") k << ";mu=" << format_double(ps.mu());
  return k.str();
}

/// Groups in first-appearance order.
std::vector<std::pair<std::string, std::vector<ParameterSet>>> group_by(const std::vector<ParameterSet>& sets,
                                                                        const std::string& free) {
  std::vector<std::pair<std::string, std::vector<ParameterSet>>> out;
  for (const auto& ps : sets) {
    const std::string key = group_key(ps, free);
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) { return g.first == key; });
    if (it == out.end()) {
      out.push_back({key, {}});
      it = out.end() - 1;
    }
    it->second.push_back(ps);
  }
  return out;
}

nlohmann::json fit_json(const SlopeFit& f) {
  return {{"label", f.label},         {"x", f.x},
          {"y", f.y},                 {"slope", f.slope},
          {"intercept", f.intercept}, {"predicted", f.predicted},
          {"deviation", f.deviation}, {"skipped", f.skipped},
          {"note", f.note}};
}

double nan() { return std::nan(""); }

}  // namespace

std::vector<ParameterSet> ExperimentSpec::expand() const {
  std::vector<ParameterSet> out;
  for (double s_ : or_base(s, base.s))
    for (Exponent p_ : or_base(p, base.p))
      for (double b_ : b.empty() ? std::vector<double>{-1.0} : b)
        for (int N_ : N.empty() ? std::vector<int>{-1} : N)
          for (double e_ : or_base(eps, base.eps))
            for (double m_ : or_base(mu, base.mu)) {
              RawParameters r = base;
              r.s = s_;
              r.p = p_;
              if (b_ >= 0) r.b = b_;
              if (N_ >= 0) r.N = N_;
              r.eps = e_;
              r.mu = m_;
              out.push_back(validate(r));
            }
  return out;
}

CartGrid ExperimentSpec::grid_for(const ApproxSolution& sol) const {
  if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0) return sol.cartesian_grid(box_factor, nyquist_factor);
  CartGrid g = sol.cartesian_grid(box_factor, nyquist_factor);
  g.n = dims;
  return g;
}

SlopeFit fit_slope(const std::string& label, const std::vector<double>& x, const std::vector<double>& y,
                   double predicted, int min_points) {
  if (x.size() != y.size()) throw RangeError("fit_slope: x and y differ in length");
  SlopeFit f;
  f.label = label;
  f.x = x;
  f.y = y;
  f.predicted = predicted;
  const int n = static_cast<int>(x.size());
  if (n < min_points || n < 2)
    throw RangeError("fit_slope: " + std::to_string(n) + " points, need " + std::to_string(std::max(2, min_points)));
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw RangeError("fit_slope: non-finite point in " + label);
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw RangeError("fit_slope: degenerate x values");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.deviation = predicted != 0 ? std::fabs(f.slope - predicted) / std::fabs(predicted) : std::fabs(f.slope);
  return f;
}

double predicted_norm_slope(int k, Exponent q, double s, Exponent p, double b) {
  const double ip = p.reciprocal(), iq = q.reciprocal();
  return k - s + 2.0 * (ip - iq) + (ip - iq) * (1.0 - b);
}

double error_scale_slope(double s, Exponent p, double b) {
  const double ip = p.reciprocal();
  return (1.0 - s + 2.0 * ip + (1.0 - b) * ip) + (-s + 2.0 * ip + (1.0 - b) * ip);
}

double error_scale(const ParameterSet& ps) {
  const double ip = ps.p().reciprocal(), mu = ps.mu(), nu = ps.nu();
  return std::pow(mu, 1.0 - ps.s() + 2.0 * ip) * std::pow(nu, ip) * std::pow(mu, -ps.s() + 2.0 * ip) *
         std::pow(nu, ip);
}

double error_sup_norm(const ApproxSolution& sol, Exponent q, const AxiGrid& grid, int times) {
  const double ts = sol.params().t_star();
  double out = 0;
  for (int i = 0; i < std::max(1, times); ++i) {
    const double t = times > 1 ? ts * i / (times - 1) : ts;
    out = std::max(out, lebesgue_norm(sol.sample(t, grid, Quantity::Error), q));
  }
  return out;
}

std::string ScanReport::summary_json() const {
  nlohmann::json j;
  j["fits"] = nlohmann::json::array();
  for (const auto& f : fits) j["fits"].push_back(fit_json(f));
  return j.dump(2);
}

ScanReport run_scaling_scan(const ExperimentSpec& spec) {
  ScanReport rep;
  rep.table.columns = {"s", "p", "b", "N", "eps", "mu", "k", "q", "norm"};
  ExperimentSpec live = spec;
  live.eps.clear();
  bool zero_eps = false;
  for (double e : or_base(spec.eps, spec.base.eps)) {
    if (e == 0.0)
      zero_eps = true;
    else
      live.eps.push_back(e);
  }
  if (zero_eps) {
    SlopeFit f;
    f.label = "eps=0";
    f.skipped = true;
    f.note = "eps = 0: every norm vanishes, nothing to fit";
    rep.fits.push_back(f);
  }
  if (live.eps.empty()) return rep;

  for (const auto& [key, sets] : group_by(live.expand(), "mu")) {
    std::vector<double> x;
    std::map<std::string, std::vector<double>> ys;
    for (const auto& ps : sets) {
      const ApproxSolution sol(ps);
      const AxiGrid grid = sol.support_grid(spec.nodes_per_scale);
      x.push_back(std::log(ps.mu()));
      for (const auto& [k, q] : spec.probes) {
        const double v = sobolev_norm(sol, 0.0, k, q, grid).value;
        ys["k=" + std::to_string(k) + ",q=" + q.str()].push_back(std::log(v));
        rep.table.rows.push_back({ps.s(), ps.p().is_infinite() ? INFINITY : ps.p().value(), ps.b(),
                                  static_cast<double>(ps.N()), ps.eps(), ps.mu(), static_cast<double>(k),
                                  q.is_infinite() ? INFINITY : q.value(), v});
      }
      const double e = error_sup_norm(sol, Exponent::infinity(), grid, spec.time_samples);
      ys["error"].push_back(std::log(e));
      ys["error_normalized"].push_back(std::log(e / error_scale(ps)));
      rep.table.rows.push_back({ps.s(), ps.p().is_infinite() ? INFINITY : ps.p().value(), ps.b(),
                                static_cast<double>(ps.N()), ps.eps(), ps.mu(), -1.0, INFINITY, e});
    }
    const ParameterSet& ps = sets.front();
    for (const auto& [k, q] : spec.probes) {
      const std::string label = "k=" + std::to_string(k) + ",q=" + q.str();
      rep.fits.push_back(fit_slope(key + ";" + label, x, ys[label], predicted_norm_slope(k, q, ps.s(), ps.p(), ps.b())));
    }
    const double scale = error_scale_slope(ps.s(), ps.p(), ps.b());
    rep.fits.push_back(fit_slope(key + ";error", x, ys["error"], scale - ps.b()));
    rep.fits.push_back(fit_slope(key + ";error_normalized", x, ys["error_normalized"], -ps.b()));
  }
  return rep;
}

std::string InflationReport::summary_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows)
    j.push_back({{"hash", r.hash},
                 {"s", r.s},
                 {"eps", r.eps},
                 {"mu", r.mu},
                 {"initial_b1", r.initial_b1},
                 {"initial_binf", r.initial_binf},
                 {"final_binf", r.final_binf},
                 {"ratio", r.ratio()},
                 {"centroid_initial", r.centroid_initial},
                 {"centroid_final", r.centroid_final},
                 {"tail_initial", r.tail_initial},
                 {"tail_final", r.tail_final},
                 {"nse_initial_b1", r.nse_initial_b1},
                 {"nse_final_binf", r.nse_final_binf},
                 {"nse_l2_ratio", r.nse_l2_ratio}});
  return nlohmann::json{{"rows", j}}.dump(2);
}

InflationReport run_inflation(const ExperimentSpec& spec) {
  InflationReport rep;
  rep.table.columns = {"s", "eps", "mu", "initial_b1", "initial_binf", "final_binf", "ratio", "centroid_initial",
                       "centroid_final", "tail_initial", "tail_final", "nse_initial_b1", "nse_final_binf", "nse_l2_ratio"};
  for (const auto& ps : spec.expand()) {
    const ApproxSolution sol(ps);
    const CartGrid grid = spec.grid_for(sol);
    InflationRow row;
    row.hash = ps.hash();
    row.s = ps.s();
    row.eps = ps.eps();
    row.mu = ps.mu();
    const Exponent q1 = Exponent::finite(1.0), qi = Exponent::infinity();
    BesovOptions bo;
    bo.check = spec.alias_check;
    {
      const SpectralField u0 = sol.sample(0.0, grid);
      auto [b1, rep0] = besov_norm(u0, ps.s(), ps.p(), q1, bo);
      row.initial_b1 = b1;
      row.initial_binf = rep0.besov_value(ps.s(), qi);
      row.centroid_initial = rep0.centroid();
      row.tail_initial = rep0.meta.tail_fraction;
    }
    {
      const SpectralField u1 = sol.sample(ps.t_star(), grid);
      auto [binf, rep1] = besov_norm(u1, ps.s(), ps.p(), qi, bo);
      row.final_binf = binf;
      row.centroid_final = rep1.centroid();
      row.tail_final = rep1.meta.tail_fraction;
    }
    row.nse_initial_b1 = row.nse_final_binf = row.nse_l2_ratio = nan();
    if (spec.with_nse) {
      SolveSpec ss;
      ss.grid = grid;
      ss.t_end = ps.t_star();
      ss.memory_cap_bytes = spec.memory_cap_bytes;
      const SolveTrace tr = solve_and_compare(sol, ss);
      row.nse_initial_b1 = tr.inflation_initial;
      row.nse_final_binf = tr.inflation_final;
      row.nse_l2_ratio = tr.probes.back().l2_w / tr.probes.back().l2_ubar;
    }
    rep.table.rows.push_back({row.s, row.eps, row.mu, row.initial_b1, row.initial_binf, row.final_binf, row.ratio(),
                              row.centroid_initial, row.centroid_final, row.tail_initial, row.tail_final, row.nse_initial_b1, row.nse_final_binf,
                              row.nse_l2_ratio});
    rep.rows.push_back(row);
  }
  return rep;
}

double vorticity_sup(const ApproxSolution& sol, double t, const AxiGrid& grid) {
  return lebesgue_norm(sol.sample(t, grid, Quantity::Vorticity), Exponent::infinity());
}

double mixing_ratio(const ApproxSolution& sol, double t, int n_rho, int n_phi) {
  GrowthOptions go;
  go.n_rho = n_rho;
  go.n_phi = n_phi;
  const auto curve = growth_curve(sol, {0.0, t}, go);
  return curve[1].dmax / curve[0].dmax;
}

std::string VorticityReport::summary_json() const {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"hash", r.hash},
                         {"s", r.s},
                         {"eps", r.eps},
                         {"mu", r.mu},
                         {"N", r.N},
                         {"vorticity_ratio", r.vorticity_ratio},
                         {"mixing_ratio", r.mixing_ratio},
                         {"nse_vorticity_ratio", r.nse_vorticity_ratio}});
  j["vorticity_fits"] = nlohmann::json::array();
  for (const auto& f : vorticity_fits) j["vorticity_fits"].push_back(fit_json(f));
  j["mixing_fits"] = nlohmann::json::array();
  for (const auto& f : mixing_fits) j["mixing_fits"].push_back(fit_json(f));
  return j.dump(2);
}

VorticityReport run_vorticity_growth(const ExperimentSpec& spec) {
  VorticityReport rep;
  rep.table.columns = {"s", "eps", "mu", "N", "vorticity_ratio", "mixing_ratio", "nse_vorticity_ratio"};
  const auto sets = spec.expand();
  for (const auto& ps : sets) {
    if (ps.s() <= 0) throw AdmissibilityError("vorticity growth needs the s > 0 branch");
    const ApproxSolution sol(ps);
    const AxiGrid grid = sol.support_grid(spec.nodes_per_scale);
    VorticityRow row;
    row.hash = ps.hash();
    row.s = ps.s();
    row.eps = ps.eps();
    row.mu = ps.mu();
    row.N = ps.N();
    row.vorticity_ratio = vorticity_sup(sol, ps.t_star(), grid) / vorticity_sup(sol, 0.0, grid);
    row.mixing_ratio = mixing_ratio(sol, ps.t_star());
    row.nse_vorticity_ratio = nan();
    if (spec.with_nse) {
      const CartGrid cg = spec.grid_for(sol);
      NseSolver solver(cg);
      solver.set_state(sol.sample(0.0, cg));
      const auto curl_max = [](const SpectralField& u) { return curl(u).max_abs(); };
      const double w0 = curl_max(solver.state());
      if (solver_memory_estimate(cg) > spec.memory_cap_bytes)
        throw ResolutionError("vorticity: solver memory estimate exceeds the cap");
      const double hmin = std::min({cg.h(0), cg.h(1), cg.h(2)});
      double umax = solver.max_velocity();
      while (solver.time() < ps.t_star()) {
        const double dt = std::min(0.5 * hmin / umax, ps.t_star() - solver.time());
        umax = solver.step(dt).max_velocity;
      }
      row.nse_vorticity_ratio = curl_max(solver.state()) / w0;
    }
    rep.table.rows.push_back({row.s, row.eps, row.mu, static_cast<double>(row.N), row.vorticity_ratio,
                              row.mixing_ratio, row.nse_vorticity_ratio});
    rep.rows.push_back(row);
  }
  for (const auto& [key, group] : group_by(sets, "eps")) {
    if (group.size() < 3) continue;
    std::vector<double> x, yv, ym;
    for (const auto& ps : group) {
      const auto it = std::find_if(rep.rows.begin(), rep.rows.end(), [&](const auto& r) { return r.hash == ps.hash(); });
      x.push_back(std::log(ps.eps()));
      yv.push_back(std::log(it->vorticity_ratio));
      ym.push_back(std::log(it->mixing_ratio));
    }
    const double pred = -group.front().N();
    rep.vorticity_fits.push_back(fit_slope(key + ";vorticity", x, yv, pred, 3));
    rep.mixing_fits.push_back(fit_slope(key + ";mixing", x, ym, pred, 3));
  }
  return rep;
}

void persist(const std::string& path, const std::string& content) { write_text(path, content); }
void persist(const std::string& path, const CsvTable& table) { write_text(path, table.str()); }
void persist(const std::string& path, const SolveTrace& trace) {
  std::ostringstream out;
  trace.write_csv(out);
  write_text(path, out.str());
}
void persist(const std::string& path, const SpectralField& snapshot) { write_nifs(path, snapshot); }

ExperimentSpec spec_from_config(const Config& cfg) {
  ExperimentSpec spec;
  spec.base = raw_from_config(cfg);
  const std::string sec = "experiment";
  if (auto v = cfg.get(sec, "name")) spec.name = *v;
  if (auto v = cfg.get_list(sec, "s")) spec.s = *v;
  if (auto v = cfg.get_list(sec, "eps")) spec.eps = *v;
  if (auto v = cfg.get_list(sec, "mu")) spec.mu = *v;
  if (auto v = cfg.get_list(sec, "b")) spec.b = *v;
  if (auto v = cfg.get_list(sec, "N"))
    for (double n : *v) spec.N.push_back(static_cast<int>(n));
  if (auto v = cfg.get(sec, "p")) {
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ','))
      if (item.find_first_not_of(" \t") != std::string::npos) spec.p.push_back(Exponent::parse(item));
  }
  if (auto v = cfg.get_int(sec, "nodes_per_scale")) spec.nodes_per_scale = *v;
  if (auto v = cfg.get_list(sec, "dims")) {
    if (v->size() != 3) throw IOError("experiment.dims needs three integers");
    for (int a = 0; a < 3; ++a) spec.dims[a] = static_cast<int>((*v)[a]);
  }
  if (auto v = cfg.get_double(sec, "box_factor")) spec.box_factor = *v;
  if (auto v = cfg.get_double(sec, "nyquist_factor")) spec.nyquist_factor = *v;
  if (auto v = cfg.get_int(sec, "time_samples")) spec.time_samples = *v;
  if (auto v = cfg.get_bool(sec, "with_nse")) spec.with_nse = *v;
  if (auto v = cfg.get_bool(sec, "alias_check")) spec.alias_check = *v;
  if (auto v = cfg.get_double(sec, "memory_cap_bytes")) spec.memory_cap_bytes = *v;
  if (auto v = cfg.get(sec, "out_dir")) spec.out_dir = *v;
  return spec;
}

}  // namespace inflab
