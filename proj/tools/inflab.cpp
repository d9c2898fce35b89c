#include <CLI11.hpp>
#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "inflab/approx_solution.hpp"
#include "inflab/config.hpp"
#include "inflab/errors.hpp"
#include "inflab/experiments.hpp"
#include "inflab/io.hpp"
#include "inflab/norms.hpp"
#include "inflab/nse.hpp"
#include "inflab/transport.hpp"

using namespace inflab;

namespace {

struct Globals {
  std::string config;
  std::string out = "out";
  int threads = 1;
  unsigned seed = 1;
  // Parameter overrides; unset ones fall back to the config file, then to the defaults.
  std::optional<double> s, eps, mu, b;
  std::optional<std::string> p, q;
  std::optional<int> N, k0;
  bool theory = false;
};

Config load_config(const Globals& g) { return g.config.empty() ? Config::parse("") : Config::load(g.config); }

RawParameters raw_params(const Globals& g, const Config& cfg) {
  RawParameters r = raw_from_config(cfg);
  if (g.s) r.s = *g.s;
  if (g.eps) r.eps = *g.eps;
  if (g.mu) r.mu = *g.mu;
  if (g.b) r.b = *g.b;
  if (g.p) r.p = Exponent::parse(*g.p);
  if (g.q) r.q = Exponent::parse(*g.q);
  if (g.N) r.N = *g.N;
  if (g.k0) r.k0 = *g.k0;
  if (g.theory) r.theory_mode = true;
  return r;
}

std::string out_path(const Globals& g, const std::string& name) {
  return (std::filesystem::path(g.out) / name).string();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

CartGrid solve_grid(const ApproxSolution& sol, const std::string& dims, double box, double nyquist) {
  CartGrid g = sol.cartesian_grid(box, nyquist);
  if (!dims.empty()) {
    const auto n = parse_list(dims);
    if (n.size() == 1)
      g.n = {static_cast<int>(n[0]), static_cast<int>(n[0]), static_cast<int>(n[0])};
    else if (n.size() == 3)
      g.n = {static_cast<int>(n[0]), static_cast<int>(n[1]), static_cast<int>(n[2])};
    else
      throw RangeError("--dims takes one or three integers");
  }
  return g;
}

Quantity parse_quantity(const std::string& name) {
  static const std::map<std::string, Quantity> table{
      {"velocity", Quantity::Velocity},   {"velocity_dt", Quantity::VelocityDt},
      {"error", Quantity::Error},         {"error_eulerian", Quantity::ErrorEulerian},
      {"error_viscous", Quantity::ErrorViscous}, {"vorticity", Quantity::Vorticity},
      {"pressure", Quantity::Pressure}};
  const auto it = table.find(name);
  if (it == table.end()) throw RangeError("unknown quantity '" + name + "'");
  return it->second;
}

void report_written(const std::string& path) { std::printf("wrote %s\n", path.c_str()); }

void write_fits_chart(const Globals& g, const std::string& name, const std::vector<SlopeFit>& fits,
                      const std::string& xlabel) {
  std::vector<SvgSeries> series;
  for (const auto& f : fits) {
    if (f.skipped) continue;
    series.push_back({f.label, f.x, f.y, true});
    std::vector<double> line;
    for (double x : f.x) line.push_back(f.intercept + f.slope * x);
    series.push_back({f.label + " fit", f.x, line, false});
  }
  if (series.empty()) return;
  persist(out_path(g, name), svg_chart(name, xlabel, "log norm", series));
  report_written(out_path(g, name));
}

void print_fits(const std::vector<SlopeFit>& fits, double tol) {
  for (const auto& f : fits) {
    if (f.skipped) {
      std::printf("SKIP %s: %s\n", f.label.c_str(), f.note.c_str());
      continue;
    }
    std::printf("%s %s slope=%.6g predicted=%.6g deviation=%.3g tol=%.3g\n", f.within(tol) ? "PASS" : "FAIL",
                f.label.c_str(), f.slope, f.predicted, f.deviation, tol);
  }
}

ExperimentSpec experiment(const Globals& g, const Config& cfg, const std::map<std::string, std::string>& lists) {
  ExperimentSpec spec = spec_from_config(cfg);
  spec.base = raw_params(g, cfg);
  for (const auto& [key, text] : lists) {
    if (text.empty()) continue;
    const auto v = parse_list(text);
    if (key == "mu") spec.mu = v;
    if (key == "eps") spec.eps = v;
    if (key == "s") spec.s = v;
    if (key == "b") spec.b = v;
    if (key == "N") {
      spec.N.clear();
      for (double n : v) spec.N.push_back(static_cast<int>(n));
    }
  }
  spec.out_dir = g.out;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Norm inflation lab: approximate solutions, Besov norms and a spectral Navier-Stokes solver"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Config file ([params], [experiment] sections)");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--threads", g.threads, "OpenMP and FFT threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for random sample points");
  app.add_option("--s", g.s, "Regularity index s");
  app.add_option("--p", g.p, "Integrability p (number or inf)");
  app.add_option("--q", g.q, "Summability q (number or inf)");
  app.add_option("--eps", g.eps, "Smallness epsilon");
  app.add_option("--mu", g.mu, "Frequency scale mu");
  app.add_option("--b", g.b, "Anisotropy exponent b, nu = mu^(1-b)");
  app.add_option("--N", g.N, "Smoothing order of f");
  app.add_option("--k0", g.k0, "Cut-off order k0");
  app.add_flag("--theory", g.theory, "Use the theorem's b and N instead of desk values");

  auto* validate_cmd = app.add_subcommand("validate", "Validate parameters and print derived scales");

  auto* profiles_cmd = app.add_subcommand("profiles", "Tabulate the profile f or g and its derivatives");
  std::string which = "f";
  double lo = 0.4, hi = 2.1;
  int npts = 201, d_lo = 0, d_hi = 1;
  profiles_cmd->add_option("--which", which, "f or g")->check(CLI::IsMember({"f", "g"}));
  profiles_cmd->add_option("--lo", lo);
  profiles_cmd->add_option("--hi", hi);
  profiles_cmd->add_option("--n", npts)->check(CLI::Range(2, 1000000));
  profiles_cmd->add_option("--d-lo", d_lo, "Lowest derivative order (negative: antiderivative)");
  profiles_cmd->add_option("--d-hi", d_hi);

  std::string dims, quantity = "velocity";
  double box = 4.0, nyquist = 6.0, t_frac = 0.0;
  auto* field_cmd = app.add_subcommand("field", "Sample the approximate solution on a Cartesian grid (NIFS)");
  field_cmd->add_option("--dims", dims, "n or nx,ny,nz");
  field_cmd->add_option("--box", box, "Box size in units of the support extent");
  field_cmd->add_option("--nyquist", nyquist, "Nyquist wavenumber in units of mu");
  field_cmd->add_option("--t-frac", t_frac, "Time as a fraction of t_star")->check(CLI::Range(0.0, 1.0));
  field_cmd->add_option("--quantity", quantity);

  auto* norms_cmd = app.add_subcommand("norms", "Shell ledger and Besov norms of the approximate solution");
  bool no_alias_check = false;
  norms_cmd->add_option("--dims", dims, "n or nx,ny,nz");
  norms_cmd->add_option("--box", box);
  norms_cmd->add_option("--nyquist", nyquist);
  norms_cmd->add_option("--t-frac", t_frac)->check(CLI::Range(0.0, 1.0));
  norms_cmd->add_flag("--no-alias-check", no_alias_check, "Report unresolved spectra instead of failing");

  auto* transport_cmd = app.add_subcommand("transport", "Swirl growth curve and a characteristics check");
  int times = 9, points = 1000;
  transport_cmd->add_option("--times", times, "Equally spaced times in [0, t_star]")->check(CLI::Range(2, 10000));
  transport_cmd->add_option("--points", points, "Random points for the characteristics check");

  auto* solve_cmd = app.add_subcommand("solve", "Solve Navier-Stokes from ubar(0) and compare with ubar");
  double dt = 0, t_end_frac = 1.0, mem_cap = 3e9;
  std::string probes;
  int snapshot_every = 0;
  solve_cmd->add_option("--dims", dims, "n or nx,ny,nz");
  solve_cmd->add_option("--box", box);
  solve_cmd->add_option("--nyquist", nyquist);
  solve_cmd->add_option("--dt", dt, "Fixed step (0: CFL)");
  solve_cmd->add_option("--t-end", t_end_frac, "End time as a fraction of t_star")->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--probes", probes, "Probe times as fractions of t_star, comma separated");
  solve_cmd->add_option("--snapshot-every", snapshot_every, "Write a snapshot every k-th probe (0: none)");
  solve_cmd->add_option("--memory-cap", mem_cap, "Refuse grids whose estimate exceeds this many bytes");
  solve_cmd->add_flag("--no-alias-check", no_alias_check);

  std::map<std::string, std::string> lists{{"mu", ""}, {"eps", ""}, {"s", ""}, {"b", ""}, {"N", ""}};
  const auto add_lists = [&](CLI::App* cmd) {
    for (auto& [key, text] : lists) cmd->add_option("--" + key + "-list", text, "Comma separated " + key + " values");
  };
  auto* scan_cmd = app.add_subcommand("scan", "Scaling-law scan in mu with slope fits");
  add_lists(scan_cmd);
  double tol = 0.10;
  scan_cmd->add_option("--tol", tol, "Relative slope tolerance");

  auto* inflate_cmd = app.add_subcommand("inflate", "Besov inflation ratio and dyadic centroid per eps");
  add_lists(inflate_cmd);
  bool with_nse = false;
  inflate_cmd->add_option("--dims", dims, "n or nx,ny,nz");
  inflate_cmd->add_option("--box", box);
  inflate_cmd->add_flag("--with-nse", with_nse, "Also solve Navier-Stokes and read out u");
  inflate_cmd->add_flag("--no-alias-check", no_alias_check);

  auto* vorticity_cmd = app.add_subcommand("vorticity", "Vorticity and mixing growth ratios with eps fits");
  add_lists(vorticity_cmd);
  vorticity_cmd->add_flag("--with-nse", with_nse);
  vorticity_cmd->add_option("--tol", tol);

  CLI11_PARSE(app, argc, argv);

  try {
    omp_set_num_threads(g.threads);
    set_fft_threads(g.threads);
    const Config cfg = load_config(g);

    if (validate_cmd->parsed()) {
      const ParameterSet ps = validate(raw_params(g, cfg));
      const ApproxSolution sol(ps);
      std::printf("%s", ps.serialize().c_str());
      std::printf("hash = %s\nnu = %.17g\nt_star = %.17g\namplitude = %.17g\nzeta_scale = %.17g\nchart_valid = %s\n",
                  ps.hash().c_str(), ps.nu(), ps.t_star(), ps.amplitude(), ps.zeta_scale(),
                  sol.chart_valid() ? "true" : "false");
      return 0;
    }

    if (profiles_cmd->parsed()) {
      const ParameterSet ps = validate(raw_params(g, cfg));
      const Profile prof = which == "f" ? make_f(ps.N()) : make_g();
      std::ostringstream os;
      prof.tabulate(os, lo, hi, npts, d_lo, d_hi);
      persist(out_path(g, "profile_" + which + ".csv"), os.str());
      report_written(out_path(g, "profile_" + which + ".csv"));
      return 0;
    }

    if (field_cmd->parsed()) {
      const ApproxSolution sol(validate(raw_params(g, cfg)));
      const CartGrid grid = solve_grid(sol, dims, box, nyquist);
      const SpectralField f = sol.sample(t_frac * sol.params().t_star(), grid, parse_quantity(quantity));
      const std::string path = out_path(g, quantity + "_" + sol.params().hash() + ".nifs");
      persist(path, f);
      std::printf("grid %dx%dx%d max|f| = %.6g\n", grid.n[0], grid.n[1], grid.n[2], f.max_abs());
      report_written(path);
      return 0;
    }

    if (norms_cmd->parsed()) {
      const ParameterSet ps = validate(raw_params(g, cfg));
      const ApproxSolution sol(ps);
      const CartGrid grid = solve_grid(sol, dims, box, nyquist);
      const SpectralField u = sol.sample(t_frac * ps.t_star(), grid);
      BesovOptions bo;
      bo.check = !no_alias_check;
      auto [value, rep] = besov_norm(u, ps.s(), ps.p(), ps.q(), bo);
      std::ostringstream os;
      rep.write_csv(os);
      persist(out_path(g, "shells_" + ps.hash() + ".csv"), os.str());
      persist(out_path(g, "norms_" + ps.hash() + ".json"), rep.summary_json());
      std::printf("besov(s=%g,p=%s,q=%s) = %.10g centroid = %.6g tail = %.3g\n", ps.s(), ps.p().str().c_str(),
                  ps.q().str().c_str(), value, rep.centroid(), rep.meta.tail_fraction);
      report_written(out_path(g, "shells_" + ps.hash() + ".csv"));
      return 0;
    }

    if (transport_cmd->parsed()) {
      const ParameterSet ps = validate(raw_params(g, cfg));
      const ApproxSolution sol(ps);
      std::vector<double> ts;
      for (int i = 0; i < times; ++i) ts.push_back(ps.t_star() * i / (times - 1));
      std::ostringstream os;
      write_growth_csv(os, growth_curve(sol, ts));
      persist(out_path(g, "growth_" + ps.hash() + ".csv"), os.str());
      report_written(out_path(g, "growth_" + ps.hash() + ".csv"));
      std::mt19937_64 rng(g.seed);
      std::uniform_real_distribution<double> x(1.0, 1.5), phi(0, 2 * M_PI);
      std::vector<TorPoint> pts;
      for (int i = 0; i < points; ++i) pts.push_back({x(rng) / ps.mu(), phi(rng)});
      const auto adv = advect(sol, [&](const TorPoint& p) { return sol.initial_swirl(p); }, ps.t_star(), pts);
      double worst = 0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        worst = std::max(worst, std::fabs(adv[i] - sol.eval_swirl(ps.t_star(), pts[i])));
      std::printf("characteristics vs closed form at t_star: max error / A = %.3g (%d points)\n",
                  worst / sol.amplitude(), points);
      return 0;
    }

    if (solve_cmd->parsed()) {
      const ParameterSet ps = validate(raw_params(g, cfg));
      const ApproxSolution sol(ps);
      SolveSpec spec;
      spec.grid = solve_grid(sol, dims, box, nyquist);
      spec.t_end = t_end_frac * ps.t_star();
      spec.dt = dt;
      spec.memory_cap_bytes = mem_cap;
      spec.alias_check = !no_alias_check;
      for (double f : parse_list(probes)) spec.probes.push_back(f * ps.t_star());
      if (snapshot_every > 0) {
        spec.snapshot_dir = out_path(g, "snapshots");
        spec.snapshot_every = snapshot_every;
      }
      std::printf("grid %dx%dx%d, estimated memory %.3g bytes (cap %.3g)\n", spec.grid.n[0], spec.grid.n[1],
                  spec.grid.n[2], solver_memory_estimate(spec.grid), mem_cap);
      const SolveTrace tr = solve_and_compare(sol, spec);
      persist(out_path(g, "solve_" + ps.hash() + ".csv"), tr);
      for (const auto& p : tr.probes)
        std::printf("t/t_star = %.4g |w|_2/|ubar|_2 = %.4g\n", p.t / ps.t_star(), p.l2_w / p.l2_ubar);
      std::printf("inflation |u(t_end)|_Binf / |u0|_B1 = %.6g\n", tr.inflation_final / tr.inflation_initial);
      report_written(out_path(g, "solve_" + ps.hash() + ".csv"));
      return 0;
    }

    if (scan_cmd->parsed()) {
      const ExperimentSpec spec = experiment(g, cfg, lists);
      const ScanReport rep = run_scaling_scan(spec);
      persist(out_path(g, spec.name + "_scan.csv"), rep.table);
      persist(out_path(g, spec.name + "_scan.json"), rep.summary_json());
      print_fits(rep.fits, tol);
      write_fits_chart(g, spec.name + "_scan.svg", rep.fits, "log mu");
      report_written(out_path(g, spec.name + "_scan.csv"));
      return 0;
    }

    if (inflate_cmd->parsed()) {
      ExperimentSpec spec = experiment(g, cfg, lists);
      if (!dims.empty()) {
        const auto n = parse_list(dims);
        spec.dims = n.size() == 3 ? std::array<int, 3>{int(n[0]), int(n[1]), int(n[2])}
                                  : std::array<int, 3>{int(n.at(0)), int(n.at(0)), int(n.at(0))};
      }
      spec.box_factor = box;
      spec.with_nse = spec.with_nse || with_nse;
      if (no_alias_check) spec.alias_check = false;
      const InflationReport rep = run_inflation(spec);
      persist(out_path(g, spec.name + "_inflation.csv"), rep.table);
      persist(out_path(g, spec.name + "_inflation.json"), rep.summary_json());
      for (const auto& r : rep.rows)
        std::printf("%s s=%g eps=%g mu=%g ratio=%.8g centroid %.6g -> %.6g tail %.3g/%.3g\n", r.hash.c_str(), r.s,
                    r.eps, r.mu, r.ratio(), r.centroid_initial, r.centroid_final, r.tail_initial, r.tail_final);
      report_written(out_path(g, spec.name + "_inflation.csv"));
      return 0;
    }

    if (vorticity_cmd->parsed()) {
      ExperimentSpec spec = experiment(g, cfg, lists);
      spec.with_nse = spec.with_nse || with_nse;
      const VorticityReport rep = run_vorticity_growth(spec);
      persist(out_path(g, spec.name + "_vorticity.csv"), rep.table);
      persist(out_path(g, spec.name + "_vorticity.json"), rep.summary_json());
      print_fits(rep.vorticity_fits, tol);
      print_fits(rep.mixing_fits, tol);
      write_fits_chart(g, spec.name + "_vorticity.svg", rep.vorticity_fits, "log eps");
      report_written(out_path(g, spec.name + "_vorticity.csv"));
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
