// planeflow: command-line driver for the steady planar-flow toolkit.
//
// Subcommands: eval, residual, invariants, moments, solve, sweep, analyze,
// plot, verify. Exit codes: 0 ok, 2 config/usage error, 3 solver divergence,
// 4 verification failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <json.hpp>

#include "planeflow/analysis.hpp"
#include "planeflow/config.hpp"
#include "planeflow/fields.hpp"
#include "planeflow/invariants.hpp"
#include "planeflow/residual.hpp"
#include "planeflow/solver.hpp"
#include "planeflow/verify.hpp"
#include "planeflow/wake.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace planeflow;

namespace {

constexpr const char* kVersion = "1.0.0";

struct GlobalOpts {
  std::string config;
  std::string out = ".";
  int jobs = 1;
  unsigned seed = 12345;
  std::vector<std::string> argv_echo;
  std::chrono::steady_clock::time_point t0;
  std::vector<std::string> outputs;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

fs::path out_path(GlobalOpts& g, const std::string& name) {
  fs::create_directories(g.out);
  g.outputs.push_back(name);
  return fs::path(g.out) / name;
}

void write_manifest(GlobalOpts& g, const Config* cfg) {
  json j;
  std::string cmd;
  for (const auto& a : g.argv_echo) cmd += (cmd.empty() ? "" : " ") + a;
  j["command"] = cmd;
  j["seed"] = g.seed;
  j["jobs"] = g.jobs;
  j["versions"] = {{"planeflow", kVersion},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"compiler", __VERSION__}};
  if (cfg) {
    json c;
    for (const auto& [section, kv] : cfg->raw()) {
      json s;
      for (const auto& [k, v] : kv) s[k] = v;
      c[section] = s;
    }
    j["config"] = c;
  }
  j["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - g.t0)
          .count();
  j["outputs"] = g.outputs;
  std::ofstream os(fs::path(g.out) / "manifest.json");
  os << j.dump(2) << "\n";
}

std::map<std::string, double> parse_params(
    const std::vector<std::string>& raw) {
  std::map<std::string, double> kv;
  for (const auto& p : raw) {
    const auto eq = p.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--param expects key=value, got '" + p + "'");
    try {
      kv[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("--param " + p + ": value is not a number");
    }
  }
  return kv;
}

// ---------------------------------------------------------------- eval ----

int run_eval(GlobalOpts& g, const std::string& field_name,
             const std::vector<std::string>& params, double rmin, double rmax,
             int nr, int ntheta) {
  AnalyticField field;
  try {
    field = AnalyticField::from_name(field_name, parse_params(params));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::ofstream os(out_path(g, "eval.csv"));
  os << "r,theta,u1,u2,p\n";
  for (double r : log_radii(rmin, rmax, nr))
    for (int j = 0; j < ntheta; ++j) {
      const double th = 2.0 * M_PI * j / ntheta;
      const FlowJet jet = field.eval({r * std::cos(th), r * std::sin(th)});
      os << fmt17(r) << ',' << fmt17(th) << ',' << fmt17(jet.u.x) << ','
         << fmt17(jet.u.y) << ',' << fmt17(jet.p) << '\n';
    }
  std::cout << "wrote eval.csv (" << nr * ntheta << " points of "
            << field.name() << ")\n";
  write_manifest(g, nullptr);
  return 0;
}

// ------------------------------------------------------------ residual ----

int run_residual(GlobalOpts& g, const std::string& field_name,
                 const std::vector<std::string>& params,
                 const std::string& op_name, const std::string& force,
                 double rmin, double rmax, int n_rays, int n_samples) {
  std::ofstream os(out_path(g, "residual.csv"));
  if (!force.empty()) {
    // Wake residual orders, decomposed parallel/perpendicular to F.
    const auto v = Config::parse_string("[f]\nF = " + force).get_list("f", "F");
    if (v.size() != 2) throw ConfigError("--force expects 'Fx,Fy'");
    const Vec2 F{v[0], v[1]};
    const std::vector<double> rays = {-1.8, -1.3, -0.8, -0.3,
                                      0.3,  0.8,  1.3,  1.8};
    const auto decays = wake_residual_orders(F, rays, rmin, rmax, n_samples);
    os << "ray,parallel_exponent,parallel_rms,perpendicular_exponent,"
          "perpendicular_rms\n";
    for (const auto& d : decays) {
      os << fmt17(d.ray) << ',' << fmt17(d.parallel.exponent) << ','
         << fmt17(d.parallel.rms_log_residual) << ','
         << fmt17(d.perpendicular.exponent) << ','
         << fmt17(d.perpendicular.rms_log_residual) << '\n';
      std::printf("ray %+5.2f  parallel %.3f  perpendicular %.3f\n", d.ray,
                  d.parallel.exponent, d.perpendicular.exponent);
    }
    write_manifest(g, nullptr);
    return 0;
  }

  AnalyticField field;
  try {
    field = AnalyticField::from_name(field_name, parse_params(params));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  OperatorKind op = OperatorKind::navier_stokes(1.0);
  if (op_name == "stokes")
    op = OperatorKind::stokes();
  else if (op_name == "euler")
    op = OperatorKind::euler();
  else if (op_name != "ns")
    throw ConfigError("--op expects ns, stokes, or euler");
  os << "ray,exponent,prefactor,rms_log_residual\n";
  for (int k = 0; k < n_rays; ++k) {
    const double th = 2.0 * M_PI * k / n_rays;
    const DecayFit fit = fit_decay_along(
        [&](double r) {
          const Point x{r * std::cos(th), r * std::sin(th)};
          return apply_operator(op, field, x).f.norm();
        },
        rmin, rmax, n_samples);
    os << fmt17(th) << ',' << fmt17(fit.exponent) << ','
       << fmt17(fit.prefactor) << ',' << fmt17(fit.rms_log_residual) << '\n';
    std::printf("ray %5.2f  exponent %.3f  (rms log residual %.3f)\n", th,
                fit.exponent, fit.rms_log_residual);
  }
  write_manifest(g, nullptr);
  return 0;
}

// ---------------------------------------------------------- invariants ----

int run_invariants(GlobalOpts& g, const std::string& field_name,
                   const std::vector<std::string>& params,
                   std::vector<double> radii, double nu) {
  AnalyticField field;
  try {
    field = AnalyticField::from_name(field_name, parse_params(params));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (radii.empty()) radii = {10.0, 100.0, 1000.0};
  std::ofstream os(out_path(g, "invariants.csv"));
  os << "radius,flux,Fx,Fy,M\n";
  for (double r : radii) {
    const InvariantTriple t = contour_invariants(field, nu, r, 512);
    os << fmt17(r) << ',' << fmt17(t.flux) << ',' << fmt17(t.force.x) << ','
       << fmt17(t.force.y) << ',' << fmt17(t.torque) << '\n';
    std::printf("r %-10g flux %-12.6g F (%.6g, %.6g) M %.6g\n", r, t.flux,
                t.force.x, t.force.y, t.torque);
  }
  write_manifest(g, nullptr);
  return 0;
}

// ------------------------------------------------------------- moments ----

int run_moments(GlobalOpts& g, int n, double amplitude, double eps) {
  const ForceField f = delta_forcing(n, amplitude, eps);
  const MomentCoefficients m = moment_coeffs(f);
  const auto flat = m.flat();
  const char* names[9] = {"c0x", "c0y", "c11", "c12", "c13",
                          "c21", "c22", "c23", "c24"};
  std::ofstream os(out_path(g, "moments.csv"));
  os << "coefficient,value\n";
  for (int i = 0; i < 9; ++i) {
    os << names[i] << ',' << fmt17(flat[i]) << '\n';
    std::printf("%-4s % .10g\n", names[i], flat[i]);
  }
  write_manifest(g, nullptr);
  return 0;
}

// --------------------------------------------------------------- solve ----

int run_solve(GlobalOpts& g) {
  if (g.config.empty()) throw ConfigError("solve requires --config");
  const Config cfg = Config::parse_file(g.config);
  cfg.require_known_sections({"grid", "bc", "forcing", "solver"});
  const AnnularGrid grid = grid_from_config(cfg);
  BoundaryConditionSpec bc = bc_from_config(cfg);
  const SolverForcing forcing = forcing_from_config(cfg);
  if (!forcing.empty() && !cfg.has_section("bc"))
    bc.inner = InnerBCKind::Natural;  // forcing runs default to a free hole
  const NewtonOptions opts = solver_from_config(cfg);

  GridSolution sol = newton_solve(grid, bc, forcing.empty() ? nullptr : &forcing,
                                  nullptr, opts);
  std::printf("status %s after %d Newton iterations, residual %.3e\n",
              to_string(sol.status), sol.newton_iterations,
              sol.residual_norm);
  sol.save(out_path(g, "solution.bin").string());
  if (sol.status == SolveStatus::Converged) {
    sol.recover_fields(forcing.empty() ? nullptr : &forcing);
    sol.write_csv(out_path(g, "solution.csv").string());
  }
  write_manifest(g, &cfg);
  return sol.status == SolveStatus::Converged ? 0 : 3;
}

// --------------------------------------------------------------- sweep ----

void emit_heatmaps(GlobalOpts& g, const std::vector<PhaseMapRow>& rows,
                   const std::string& xlabel, const std::string& ylabel) {
  struct Col {
    const char* name;
    std::function<double(const PhaseMapRow&)> get;
  };
  const std::vector<Col> cols = {
      {"exponent", [](const PhaseMapRow& r) { return r.exponent; }},
      {"mean_angle", [](const PhaseMapRow& r) { return r.mean_angle; }},
      {"angle_std", [](const PhaseMapRow& r) { return r.angle_std; }},
      {"Fx", [](const PhaseMapRow& r) { return r.body_force.x; }},
      {"Fy", [](const PhaseMapRow& r) { return r.body_force.y; }},
      {"M", [](const PhaseMapRow& r) { return r.body_torque; }},
  };
  for (const auto& c : cols) {
    std::vector<double> p1, p2, z;
    for (const auto& r : rows) {
      p1.push_back(r.param1);
      p2.push_back(r.param2);
      z.push_back(c.get(r));
    }
    svg_heatmap(out_path(g, std::string("phasemap_") + c.name + ".svg")
                    .string(),
                c.name, xlabel, ylabel, p1, p2, z);
  }
}

int run_sweep(GlobalOpts& g, bool save_solutions) {
  if (g.config.empty()) throw ConfigError("sweep requires --config");
  const Config cfg = Config::parse_file(g.config);
  cfg.require_known_sections({"grid", "bc", "forcing", "solver", "sweep"});
  const AnnularGrid grid = grid_from_config(cfg);
  const NewtonOptions opts = solver_from_config(cfg);
  const SweepSpec spec = sweep_from_config(cfg);
  ContinuationPlan plan = plan_from_config(cfg, spec);
  if (plan.make_forcing && !cfg.has_section("bc")) {
    auto base = plan.make_bc;
    plan.make_bc = [base](double p1, double p2) {
      BoundaryConditionSpec bc = base(p1, p2);
      bc.inner = InnerBCKind::Natural;
      return bc;
    };
  }

  auto sweep = continuation_sweep(plan, grid, opts);
  int n_conv = 0;
  for (const auto& pt : sweep)
    if (pt.status == SolveStatus::Converged) ++n_conv;
  std::printf("sweep: %d/%zu points converged\n", n_conv, sweep.size());

  PhaseMapOptions pm;
  pm.fit_rmin = spec.fit_rmin;
  pm.fit_rmax = spec.fit_rmax;
  pm.fold_mod_pi = spec.fold_mod_pi;
  pm.make_forcing = plan.make_forcing;
  const auto rows = phase_map(sweep, pm);
  write_phasemap_csv(out_path(g, "phasemap.csv").string(), rows);
  emit_heatmaps(g, rows, spec.axis1, spec.axis2.empty() ? "-" : spec.axis2);

  if (save_solutions) {
    for (std::size_t i = 0; i < sweep.size(); ++i)
      if (sweep[i].status == SolveStatus::Converged)
        sweep[i].solution.save(
            out_path(g, "sweep_" + std::to_string(i) + ".bin").string());
  }
  for (const auto& row : rows)
    std::printf("p1 %-10g p2 %-10g exponent %-8.3f angle %-8.3f std %-8.3f "
                "F (%.4g, %.4g) M %-10.4g %s\n",
                row.param1, row.param2, row.exponent, row.mean_angle,
                row.angle_std, row.body_force.x, row.body_force.y,
                row.body_torque, to_string(row.status));
  write_manifest(g, &cfg);
  return n_conv > 0 ? 0 : 3;
}

// ------------------------------------------------------------- analyze ----

int run_analyze(GlobalOpts& g, const std::string& solution_path, double rmin,
                double rmax, bool fold) {
  GridSolution sol = GridSolution::load(solution_path);
  if (sol.status != SolveStatus::Converged) {
    std::cerr << "solution status is " << to_string(sol.status) << "\n";
    return 3;
  }
  sol.recover_fields();
  const FieldFn f = sol.field();
  if (!(rmin > sol.grid.r_inner && rmax < sol.grid.r_outer))
    throw ConfigError("analysis window must lie inside the solution grid");

  const RayProfile prof = ray_profile(f, log_radii(rmin, rmax, 25));
  write_profile_csv(out_path(g, "profile.csv").string(), prof);

  std::vector<PlotSeries> series(2);
  series[0].name = "r^(1/3) d(r)";
  series[1].name = "r d(r)";
  for (std::size_t k = 0; k < prof.radii.size(); ++k) {
    series[0].x.push_back(prof.radii[k]);
    series[0].y.push_back(std::cbrt(prof.radii[k]) * prof.d[k]);
    series[1].x.push_back(prof.radii[k]);
    series[1].y.push_back(prof.radii[k] * prof.d[k]);
  }
  svg_line_plot(out_path(g, "profile.svg").string(),
                "compensated speed profiles", "r", "compensated d(r)",
                series);

  const double expo = fit_profile_exponent(prof);
  const HarmonicFit hf = harmonic_fit(f, rmin, rmax);
  const WakeFitResult wf = wake_fit(f, rmin, rmax, fold);
  std::printf("decay exponent      %.4f\n", expo);
  std::printf("harmonic fit        mu %.6g, sup residual %.3e (%s)\n", hf.mu,
              hf.sup_residual,
              hf.sup_residual < 0.1 * std::abs(hf.mu) ? "accepted"
                                                      : "rejected");
  std::printf("wake fit            F (%.6g, %.6g), relative rms %.3f (%s)\n",
              wf.F.x, wf.F.y, wf.relative_rms,
              wf.rejected ? "rejected" : "accepted");

  json j;
  j["exponent"] = expo;
  j["harmonic_fit"] = {{"mu", hf.mu}, {"sup_residual", hf.sup_residual}};
  j["wake_fit"] = {{"Fx", wf.F.x},
                   {"Fy", wf.F.y},
                   {"rms", wf.rms},
                   {"relative_rms", wf.relative_rms},
                   {"rejected", wf.rejected}};
  std::ofstream os(out_path(g, "analyze.json"));
  os << j.dump(2) << "\n";
  write_manifest(g, nullptr);
  return 0;
}

// ---------------------------------------------------------------- plot ----

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open CSV: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  if (rows.size() < 2) throw ConfigError("CSV has no data rows: " + path);
  return rows;
}

int run_plot(GlobalOpts& g, const std::string& profile_csv,
             const std::string& phasemap_csv, const std::string& column) {
  if (profile_csv.empty() == phasemap_csv.empty())
    throw ConfigError("plot needs exactly one of --profile or --phasemap");
  if (!profile_csv.empty()) {
    const auto rows = read_csv(profile_csv);
    if (rows[0].size() < 2 || rows[0][0] != "r" || rows[0][1] != "d")
      throw ConfigError("--profile expects the r,d,a schema");
    std::vector<PlotSeries> series(2);
    series[0].name = "r^(1/3) d(r)";
    series[1].name = "r d(r)";
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double r = std::stod(rows[i][0]), d = std::stod(rows[i][1]);
      series[0].x.push_back(r);
      series[0].y.push_back(std::cbrt(r) * d);
      series[1].x.push_back(r);
      series[1].y.push_back(r * d);
    }
    svg_line_plot(out_path(g, "profile.svg").string(),
                  "compensated speed profiles", "r", "compensated d(r)",
                  series);
    std::cout << "wrote profile.svg\n";
  } else {
    const auto rows = read_csv(phasemap_csv);
    int col = -1;
    for (std::size_t c = 0; c < rows[0].size(); ++c)
      if (rows[0][c] == column) col = static_cast<int>(c);
    if (col < 0)
      throw ConfigError("column '" + column + "' not found in " +
                        phasemap_csv);
    std::vector<double> p1, p2, z;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      p1.push_back(std::stod(rows[i][0]));
      p2.push_back(std::stod(rows[i][1]));
      z.push_back(std::stod(rows[i][col]));
    }
    svg_heatmap(out_path(g, "phasemap_" + column + ".svg").string(), column,
                rows[0][0], rows[0][1], p1, p2, z);
    std::cout << "wrote phasemap_" << column << ".svg\n";
  }
  write_manifest(g, nullptr);
  return 0;
}

// -------------------------------------------------------------- verify ----

int run_verify(GlobalOpts& g, const std::string& suite) {
  std::vector<CheckLine> lines;
  auto add = [&](std::vector<CheckLine> v) {
    for (auto& l : v) lines.push_back(std::move(l));
  };
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "exact-solutions") {
    add(verify_exact_solutions(g.seed));
    add(verify_euler_correction());
    add(verify_euler_net_force());
    known = true;
  }
  if (all || suite == "asymptotics") {
    add(verify_wake_residual_orders());
    add(verify_wake_force());
    add(verify_cross_corrector());
    known = true;
  }
  if (all || suite == "symmetry-table") {
    add(verify_symmetry_table(g.seed));
    known = true;
  }
  if (all || suite == "oracle") {
    add(verify_oracle(g.seed));
    known = true;
  }
  if (all || suite == "solver-convergence") {
    add(verify_solver_convergence());
    known = true;
  }
  if (!known)
    throw ConfigError(
        "unknown suite '" + suite +
        "' (expected exact-solutions, asymptotics, symmetry-table, oracle, "
        "solver-convergence, or all)");
  const int failed = print_report(std::cout, lines);
  std::printf("%zu checks, %d failed\n", lines.size(), failed);
  return failed == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  g.t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < argc; ++i) g.argv_echo.push_back(argv[i]);

  CLI::App app{"planeflow: steady planar incompressible flow toolkit"};
  app.require_subcommand(1);
  app.add_option("--config", g.config, "experiment config file");
  app.add_option("--out", g.out, "output directory (default .)");
  app.add_option("--jobs", g.jobs, "concurrency cap (default 1)");
  app.add_option("--seed", g.seed, "seed for randomized ensembles");

  // eval
  std::string field_name, op_name = "ns", force, column = "exponent";
  std::vector<std::string> params;
  double rmin = 4.0, rmax = 1e3;
  int nr = 17, ntheta = 32, n_rays = 8, n_samples = 25;
  auto* eval = app.add_subcommand("eval", "evaluate an analytic field on a "
                                          "polar grid and dump a CSV");
  eval->add_option("--field", field_name, "field name")->required();
  eval->add_option("--param", params, "field parameter key=value");
  eval->add_option("--rmin", rmin, "innermost radius");
  eval->add_option("--rmax", rmax, "outermost radius");
  eval->add_option("--nr", nr, "number of radii (log-spaced)");
  eval->add_option("--ntheta", ntheta, "number of angles");

  auto* residual = app.add_subcommand(
      "residual", "fit the decay of an operator residual along rays");
  residual->add_option("--field", field_name, "field name");
  residual->add_option("--param", params, "field parameter key=value");
  residual->add_option("--op", op_name, "operator: ns | stokes | euler");
  residual->add_option("--force", force,
                       "wake net force 'Fx,Fy' (parallel/perpendicular "
                       "residual orders)");
  residual->add_option("--rmin", rmin, "fit window start");
  residual->add_option("--rmax", rmax, "fit window end");
  residual->add_option("--rays", n_rays, "number of rays");
  residual->add_option("--samples", n_samples, "radii per ray");

  std::vector<double> radii;
  double nu = 1.0;
  auto* invariants = app.add_subcommand(
      "invariants", "contour flux/force/torque of an analytic field");
  invariants->add_option("--field", field_name, "field name")->required();
  invariants->add_option("--param", params, "field parameter key=value");
  invariants->add_option("--radii", radii, "contour radii");
  invariants->add_option("--nu", nu, "viscosity in the stress tensor");

  int fn = 1;
  double famp = 1.0, feps = 0.5;
  auto* moments = app.add_subcommand(
      "moments", "moment coefficients of the ring delta forcing");
  moments->add_option("--n", fn, "number of forcing sites");
  moments->add_option("--amplitude", famp, "forcing amplitude");
  moments->add_option("--eps", feps, "Gaussian width parameter");

  auto* solve = app.add_subcommand(
      "solve", "Newton solve of the config's boundary/forcing problem");

  bool save_solutions = false;
  auto* sweep = app.add_subcommand(
      "sweep", "warm-started parameter sweep + phase-map outputs");
  sweep->add_flag("--save-solutions", save_solutions,
                  "also dump every converged solution");

  std::string solution_path;
  bool fold = false;
  double armin = 30.0, armax = 300.0;
  auto* analyze = app.add_subcommand(
      "analyze", "ray profile and asymptote fits of a stored solution");
  analyze->add_option("--solution", solution_path, "solution .bin path")
      ->required();
  analyze->add_option("--rmin", armin, "analysis window start");
  analyze->add_option("--rmax", armax, "analysis window end");
  analyze->add_flag("--fold", fold, "fold angles mod pi (double wakes)");

  std::string profile_csv, phasemap_csv;
  auto* plot = app.add_subcommand("plot", "re-plot stored CSVs as SVG");
  plot->add_option("--profile", profile_csv, "profile.csv to plot");
  plot->add_option("--phasemap", phasemap_csv, "phasemap.csv to plot");
  plot->add_option("--column", column, "phasemap column (default exponent)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run an acceptance suite");
  verify->add_option("--suite", suite,
                     "exact-solutions | asymptotics | symmetry-table | "
                     "oracle | solver-convergence | all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Eigen::setNbThreads(g.jobs);
  try {
    if (eval->parsed())
      return run_eval(g, field_name, params, rmin, rmax, nr, ntheta);
    if (residual->parsed())
      return run_residual(g, field_name, params, op_name, force, rmin, rmax,
                          n_rays, n_samples);
    if (invariants->parsed())
      return run_invariants(g, field_name, params, radii, nu);
    if (moments->parsed()) return run_moments(g, fn, famp, feps);
    if (solve->parsed()) return run_solve(g);
    if (sweep->parsed()) return run_sweep(g, save_solutions);
    if (analyze->parsed())
      return run_analyze(g, solution_path, armin, armax, fold);
    if (plot->parsed()) return run_plot(g, profile_csv, phasemap_csv, column);
    if (verify->parsed()) return run_verify(g, suite);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
