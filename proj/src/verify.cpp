#include "planeflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Sparse>

#include "planeflow/analysis.hpp"
#include "planeflow/fields.hpp"
#include "planeflow/invariants.hpp"
#include "planeflow/residual.hpp"
#include "planeflow/solver.hpp"
#include "planeflow/wake.hpp"

namespace planeflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

CheckLine line(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

double max_ns_residual(const AnalyticField& field, const OperatorKind& op,
                       double rmin, double rmax, int n_points,
                       std::mt19937& rng) {
  std::uniform_real_distribution<double> ulog(std::log(rmin), std::log(rmax));
  std::uniform_real_distribution<double> uth(0.0, 2.0 * kPi);
  double worst = 0.0;
  for (int k = 0; k < n_points; ++k) {
    const double r = std::exp(ulog(rng)), th = uth(rng);
    const Point x{r * std::cos(th), r * std::sin(th)};
    const OperatorResult res = apply_operator(op, field, x);
    worst = std::max(worst, res.f.norm() + std::abs(res.div));
  }
  return worst;
}

}  // namespace

std::vector<CheckLine> verify_exact_solutions(unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<CheckLine> out;
  const double rmin = 2.0 * CutoffProfile{}.outer, rmax = 1e4;
  const OperatorKind ns = OperatorKind::navier_stokes(1.0);

  const double h = max_ns_residual(AnalyticField::hamel(1.3, 0.4), ns, rmin,
                                   rmax, 1000, rng);
  out.push_back(line("exact-1a swirling-jet NS residual", h < 1e-10,
                     fmt("max residual %.3e (< 1e-10), A=1.3 mu=0.4, 1000 "
                         "points r in [%g, %g]",
                         h, rmin, rmax)));

  const double v = max_ns_residual(
      AnalyticField::harmonic_vortex(8.0 * kPi), ns, rmin, rmax, 1000, rng);
  out.push_back(line("exact-1b point-vortex NS residual", v < 1e-10,
                     fmt("max residual %.3e (< 1e-10), M=8pi", v)));

  for (double lam : {0.0, 0.3, 0.6, 0.9}) {
    const double e =
        max_ns_residual(AnalyticField::euler_leading(1.0, lam, 0.4),
                        OperatorKind::euler(), rmin, rmax, 1000, rng);
    out.push_back(line(fmt("exact-1c Euler residual lambda=%.1f", lam),
                       e < 1e-10, fmt("max residual %.3e (< 1e-10)", e)));
  }
  return out;
}

std::vector<CheckLine> verify_euler_correction() {
  std::vector<CheckLine> out;
  for (double lam : {0.0, 0.3, 0.6}) {
    const EulerCorrection c = solve_euler_correction(1.0, lam, 0.0, 96);
    const double target = 3.0 * kPi / std::sqrt(1.0 - lam * lam);
    const double rel = std::abs(c.integral - target) / target;
    out.push_back(line(
        fmt("euler-correction lambda=%.1f", lam), rel < 1e-6,
        fmt("integral %.10f vs target %.10f, rel err %.2e (< 1e-6)",
            c.integral, target, rel)));
  }
  return out;
}

std::vector<CheckLine> verify_euler_net_force() {
  std::vector<CheckLine> out;
  const double amp = 1.0, th0 = 0.4, radius = 1e3;
  for (double lam : {0.3, 0.6}) {
    const AnalyticField f = AnalyticField::euler_leading(amp, lam, th0);
    const Vec2 measured = contour_invariants(f, 1.0, radius, 1024).force;
    const Vec2 expected = euler_net_force_formula(amp, lam, th0);
    const double rel = (measured - expected).norm() / expected.norm();
    // Known discrepancy (see README): the measured contour force is
    // -expected/(2π); report the diagnostic ratio alongside the verdict.
    const double diag =
        (measured + expected * (1.0 / (2.0 * kPi))).norm() / expected.norm();
    out.push_back(
        line(fmt("euler-force lambda=%.1f", lam), rel < 0.005,
             fmt("measured (%.6f, %.6f) vs formula (%.6f, %.6f), rel err "
                 "%.3f (< 0.005); note: measured vs -formula/(2pi) differs "
                 "by %.2e",
                 measured.x, measured.y, expected.x, expected.y, rel, diag)));
  }
  return out;
}

std::vector<CheckLine> verify_wake_residual_orders() {
  const Vec2 F{-16.0 / 9.0, 0.0};
  const std::vector<double> rays = {-1.8, -1.3, -0.8, -0.3, 0.3, 0.8, 1.3, 1.8};
  const auto decays = wake_residual_orders(F, rays);
  std::vector<CheckLine> out;
  const double par_lim = -7.0 / 3.0 + 0.15, perp_lim = -8.0 / 3.0 + 0.15;
  for (const RayDecay& d : decays) {
    const bool ok =
        d.parallel.exponent <= par_lim && d.perpendicular.exponent <= perp_lim;
    out.push_back(line(
        fmt("wake-residual ray %+.1f", d.ray), ok,
        fmt("parallel %.3f (<= %.3f), perpendicular %.3f (<= %.3f)",
            d.parallel.exponent, par_lim, d.perpendicular.exponent, perp_lim)));
  }
  return out;
}

std::vector<CheckLine> verify_wake_force() {
  const Vec2 F{-16.0 / 9.0, 0.0};
  const AnalyticField wf = AnalyticField::wake(F);
  const std::vector<double> radii = {1e3, 1e4, 3e4};
  std::vector<Vec2> forces;
  for (double r : radii)
    forces.push_back(contour_invariants(wf, 1.0, r, 2048).force);
  const Vec2 fext = extrapolate_force(forces, radii, 1.0 / 3.0);
  const double rel = (fext - F).norm() / F.norm();
  return {line("wake-force extrapolation", rel < 0.02,
               fmt("extrapolated (%.5f, %.5f) vs (%.5f, %.5f), rel err %.4f "
                   "(< 0.02); raw forces |F| = %.4f, %.4f, %.4f",
                   fext.x, fext.y, F.x, F.y, rel, forces[0].norm(),
                   forces[1].norm(), forces[2].norm()))};
}

namespace {

// Compact Gaussian blob mixture with prescribed centers/amplitudes.
ForceField blob_pair(const Vec2& a1, const Point& c1, const Vec2& a2,
                     const Point& c2, double s2) {
  ForceField f;
  f.support_radius = 10.0;
  f.f = [=](const Point& x) {
    const double d1 = (x.vec() - c1.vec()).norm2();
    const double d2 = (x.vec() - c2.vec()).norm2();
    return a1 * std::exp(-d1 / s2) + a2 * std::exp(-d2 / s2);
  };
  return f;
}

}  // namespace

std::vector<CheckLine> verify_oracle(unsigned seed) {
  std::vector<CheckLine> out;
  (void)seed;

  // Zero-mean compact forcing: opposite blobs, nonzero first moments.
  const ForceField fz = blob_pair({0.8, -0.5}, {1.5, 0.7}, {-0.8, 0.5},
                                  {-1.2, -0.4}, 1.1);
  const MomentCoefficients mz = moment_coeffs(fz, {160, 256});
  const AnalyticField s1 =
      AnalyticField::asym_term(1, {mz.c1[0], mz.c1[1], mz.c1[2]});
  std::vector<std::pair<double, double>> samples;
  for (double r : log_radii(1e2, 1e3, 9)) {
    double worst = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double th = 2.0 * kPi * j / 8 + 0.19;
      const Point x{r * std::cos(th), r * std::sin(th)};
      worst = std::max(worst,
                       (stokes_convolution(fz, x).u - s1.eval(x).u).norm());
    }
    samples.push_back({r, worst});
  }
  const DecayFit rem = fit_decay(samples);
  out.push_back(line(
      "oracle zero-mean remainder", rem.exponent <= -1.4,
      fmt("remainder exponent %.3f (<= -1.4) over [1e2, 1e3], c1 = (%.3f, "
          "%.3f, %.3f)",
          rem.exponent, mz.c1[0], mz.c1[1], mz.c1[2])));

  // Nonzero-mean forcing: |u| grows logarithmically with slope |F|/(4π).
  const ForceField fm = blob_pair({0.9, -0.4}, {1.0, 0.3}, {0.3, 0.6},
                                  {-0.8, -0.5}, 1.0);
  const MomentCoefficients mm = moment_coeffs(fm, {160, 256});
  const double target_slope = mm.c0.norm() / (4.0 * kPi);
  double sxx = 0, sx = 0, sy = 0, sxy = 0;
  int n = 0;
  for (double r : log_radii(1e2, 1e3, 9)) {
    double mean = 0.0;
    for (int j = 0; j < 8; ++j) {
      const double th = 2.0 * kPi * j / 8;
      const Point x{r * std::cos(th), r * std::sin(th)};
      mean += stokes_convolution(fm, x).u.norm();
    }
    mean /= 8.0;
    const double lx = std::log(r);
    sx += lx;
    sy += mean;
    sxx += lx * lx;
    sxy += lx * mean;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double rel = std::abs(slope - target_slope) / target_slope;
  out.push_back(line(
      "oracle log-growth slope", rel < 0.05,
      fmt("fitted slope %.5f vs |F|/(4pi) = %.5f, rel err %.3f (< 0.05)",
          slope, target_slope, rel)));
  return out;
}

std::vector<CheckLine> verify_symmetry_table(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  std::uniform_real_distribution<double> width(0.8, 1.5);
  std::vector<ForceField> ensemble;
  for (int i = 0; i < 20; ++i) {
    struct Blob {
      Vec2 a;
      Point c;
      double s2;
    };
    std::vector<Blob> blobs;
    for (int k = 0; k < 3; ++k) {
      const double w = width(rng);
      blobs.push_back({{amp(rng), amp(rng)}, {pos(rng), pos(rng)}, w * w});
    }
    ForceField f;
    f.support_radius = 9.0;
    f.f = [blobs](const Point& x) {
      Vec2 acc{};
      for (const auto& b : blobs)
        acc += b.a * std::exp(-(x.vec() - b.c.vec()).norm2() / b.s2);
      return acc;
    };
    ensemble.push_back(f);
  }
  const std::vector<SymmetryKind> kinds = {
      SymmetryKind::Central,        SymmetryKind::AxisX2,
      SymmetryKind::RotatedAxis,    SymmetryKind::TwoAxes,
      SymmetryKind::CentralRotated, SymmetryKind::FourAxes,
  };
  const char* names[] = {"central",         "mirror",      "rotated-mirror",
                         "two-axes",        "central+rot", "four-axes"};
  const auto rows = symmetry_table_check(ensemble, kinds, {160, 256}, 1e-10);
  std::vector<CheckLine> out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::string pattern;
    for (int i = 0; i < 9; ++i) pattern += rows[k].entry_ok[i] ? '.' : 'X';
    out.push_back(line(fmt("symmetry-table %s", names[k]), rows[k].passed,
                       fmt("entry verdicts [%s] ('.' ok), zeros < 1e-10, "
                           "generic > 1e-9 in >= 18/20 members",
                           pattern.c_str())));
  }
  return out;
}

namespace {

// RMS of the assembled discrete residual with the exact solution injected.
double injected_rms(const AnnularGrid& grid, const BoundaryConditionSpec& bc,
                    const SolverForcing* forcing,
                    const std::function<double(double)>& psi_exact,
                    const std::function<double(double)>& omega_exact) {
  Eigen::VectorXd state(2 * grid.n_nodes());
  for (int i = 0; i < grid.n_r; ++i) {
    const double r = grid.r(i);
    for (int j = 0; j < grid.n_theta; ++j) {
      state[2 * grid.idx(i, j)] = psi_exact(r);
      state[2 * grid.idx(i, j) + 1] = omega_exact(r);
    }
  }
  Eigen::VectorXd res;
  assemble_system(grid, bc, forcing, state, res, nullptr);
  return res.norm() / std::sqrt(static_cast<double>(res.size()));
}

// Derivatives of the quintic smoothstep cutoff up to fourth order.
struct ChiJet {
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0;
};
ChiJet chi_derivs(const CutoffProfile& c, double r) {
  ChiJet out;
  if (r >= c.outer) {
    out.c0 = 1.0;
    return out;
  }
  if (r <= c.inner) return out;
  const double w = c.outer - c.inner;
  const double t = (r - c.inner) / w;
  out.c0 = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  out.c1 = (30.0 * t * t - 60.0 * t * t * t + 30.0 * t * t * t * t) / w;
  out.c2 = (60.0 * t - 180.0 * t * t + 120.0 * t * t * t) / (w * w);
  out.c3 = (60.0 - 360.0 * t + 360.0 * t * t) / (w * w * w);
  out.c4 = (-360.0 + 720.0 * t) / (w * w * w * w);
  return out;
}

}  // namespace

std::vector<CheckLine> verify_solver_convergence() {
  std::vector<CheckLine> out;
  const int nr[3] = {49, 97, 193}, nt[3] = {16, 32, 64};

  // Injection (a): swirling jet ψ = A√r + μ log r with the multivalued
  // (3/2)θ flux part; an exact solution of the unforced system.
  {
    const double A = 0.8, mu = 0.4;
    double rms[3];
    for (int g = 0; g < 3; ++g) {
      AnnularGrid grid;
      grid.r_inner = 1.0;
      grid.r_outer = 100.0;
      grid.n_r = nr[g];
      grid.n_theta = nt[g];
      BoundaryConditionSpec bc;
      bc.c_theta = 1.5;
      bc.psi_inner = [&](double) { return A; };
      bc.dpsidr_inner = [&](double) { return 0.5 * A + mu; };
      const double R = grid.r_outer;
      bc.psi_outer = [=](double) {
        return A * std::sqrt(R) + mu * std::log(R);
      };
      bc.omega_outer = [=](double) { return 0.25 * A * std::pow(R, -1.5); };
      rms[g] = injected_rms(
          grid, bc, nullptr,
          [&](double r) { return A * std::sqrt(r) + mu * std::log(r); },
          [&](double r) { return 0.25 * A * std::pow(r, -1.5); });
    }
    const double r12 = std::log2(rms[0] / rms[1]);
    const double r23 = std::log2(rms[1] / rms[2]);
    const bool ok = r12 > 1.7 && r12 < 2.3 && r23 > 1.7 && r23 < 2.3;
    out.push_back(line(
        "solver-order swirling-jet injection", ok,
        fmt("residual RMS %.3e -> %.3e -> %.3e, rates %.2f, %.2f (in [1.7, "
            "2.3])",
            rms[0], rms[1], rms[2], r12, r23)));
  }

  // Injection (b): cutoff point vortex ψ = −k χ(r) log r (k = M/4π) with its
  // closed-form vorticity and manufactured source. The cutoff is only C², so
  // Δω has line singularities at the band edges that the pointwise source
  // misses; the measured rates document this (see README known failures).
  {
    const double M = 8.0 * kPi, k = M / (4.0 * kPi);
    const CutoffProfile cut{};
    auto omega = [&](double r) {
      const ChiJet c = chi_derivs(cut, r);
      const double L = std::log(r);
      return -k * (c.c2 * L + c.c1 * (L + 2.0) / r);
    };
    auto source = [&](double r) {
      const ChiJet c = chi_derivs(cut, r);
      const double L = std::log(r);
      return -k * (c.c4 * L + 2.0 * c.c3 * (L + 2.0) / r -
                   c.c2 * L / (r * r) + c.c1 * L / (r * r * r));
    };
    double rms[3];
    for (int g = 0; g < 3; ++g) {
      AnnularGrid grid;
      grid.r_inner = 0.5;
      grid.r_outer = 50.0;
      grid.n_r = nr[g];
      grid.n_theta = nt[g];
      BoundaryConditionSpec bc;
      bc.psi_inner = [](double) { return 0.0; };
      bc.dpsidr_inner = [](double) { return 0.0; };
      const double R = grid.r_outer;
      bc.psi_outer = [=](double) { return -k * std::log(R); };
      bc.omega_outer = [](double) { return 0.0; };
      SolverForcing forcing;
      forcing.curl = [&, source](const Point& x) { return source(x.r()); };
      rms[g] = injected_rms(
          grid, bc, &forcing,
          [&](double r) { return -k * chi_derivs(cut, r).c0 * std::log(r); },
          omega);
    }
    const double r12 = std::log2(rms[0] / rms[1]);
    const double r23 = std::log2(rms[1] / rms[2]);
    const bool ok = r12 > 1.7 && r12 < 2.3 && r23 > 1.7 && r23 < 2.3;
    out.push_back(line(
        "solver-order point-vortex injection", ok,
        fmt("residual RMS %.3e -> %.3e -> %.3e, rates %.2f, %.2f (target "
            "[1.7, 2.3]); C2 cutoff makes the vorticity source "
            "distributional at the band edges",
            rms[0], rms[1], rms[2], r12, r23)));
  }
  return out;
}

std::vector<CheckLine> verify_cross_corrector() {
  const std::vector<double> A = {2.0, 1.1, -0.7, 1.6};
  const double nu = 1.0;
  const AnalyticField corr = AnalyticField::cross_corrector(A, nu);
  double worst = -100.0;
  double worst_ratio = 0.0;  // residual relative to the cancelled coupling
  std::string detail;
  for (int j = 0; j < 8; ++j) {
    const double th = 2.0 * kPi * j / 8 + 0.13;
    auto residual = [&](double r) {
      const Point x{r * std::cos(th), r * std::sin(th)};
      const FlowJet u1 = eval_flux_carrier(A[0], x) +
                         eval_asym_term(1, {A[1], A[2], A[3]}, x);
      const OperatorResult st =
          apply_operator(OperatorKind::stokes(), corr.eval(x));
      return std::make_pair((st.f - u1.convective() * nu).norm(),
                            u1.convective().norm() * nu);
    };
    const DecayFit fit = fit_decay_along(
        [&](double r) { return residual(r).first; }, 1e2, 1e4, 25);
    for (double r : log_radii(1e2, 1e4, 25)) {
      const auto [res, scale] = residual(r);
      worst_ratio = std::max(worst_ratio, res / std::max(scale, 1e-300));
    }
    worst = std::max(worst, fit.exponent);
    detail += fmt("%.2f ", fit.exponent);
  }
  // The corrector cancels the coupling to rounding, so the sampled residual
  // is floating-point noise; either verdict path certifies decay <= -3.5.
  const bool ok = worst <= -3.5 || worst_ratio < 1e-10;
  return {line("cross-corrector cancellation", ok,
               fmt("max residual / |coupling| = %.2e (cancellation exact to "
                   "rounding when < 1e-10); fitted noise exponents per ray "
                   "[%s], worst %.2f (target <= -3.5)",
                   worst_ratio, detail.c_str(), worst))};
}

std::vector<CheckLine> verify_wake_reproduction(
    const WakeReproductionOptions& opts) {
  std::vector<CheckLine> out;
  AnnularGrid grid;
  grid.r_inner = 1.0;
  grid.r_outer = opts.r_outer;
  grid.n_r = opts.n_r;
  grid.n_theta = opts.n_theta;

  // (a) pulled flow: continuation in the pulling strength up to 2π.
  {
    ContinuationPlan plan;
    plan.param1 = {kPi / 2, kPi, 1.5 * kPi, 2.0 * kPi};
    plan.param2 = {0.0};
    plan.make_bc = [](double p1, double) {
      BoundaryConditionSpec bc;
      bc.c0 = {-p1, 0.0};
      return bc;
    };
    auto sweep = continuation_sweep(plan, grid);
    SweepPoint& last = sweep.back();
    if (last.status != SolveStatus::Converged) {
      out.push_back(line("wake-run pulled flow", false,
                         fmt("Newton did not converge at F=2pi (status %s)",
                             to_string(last.status))));
    } else {
      last.solution.recover_fields();
      const FieldFn f = last.solution.field();
      const RayProfile prof =
          ray_profile(f, log_radii(opts.fit_rmin, opts.fit_rmax, 17), 512);
      const double expo = fit_profile_exponent(prof);
      const CircularStats cs = circular_stats(prof.a);
      const bool ok = expo >= -0.45 && expo <= -0.25 && cs.std < 0.2;
      out.push_back(line(
          "wake-run pulled flow", ok,
          fmt("F=2pi: %d Newton iters, d(r) exponent %.3f (in [-0.45, "
              "-0.25]), wake angle mean %.3f, circular std %.3f (< 0.2)",
              last.solution.newton_iterations, expo, cs.mean, cs.std)));
    }
  }

  // (b) spun flow: continuation in the torque up to 30π.
  {
    ContinuationPlan plan;
    plan.param1 = {10.0 * kPi, 20.0 * kPi, 30.0 * kPi};
    plan.param2 = {0.0};
    plan.make_bc = [](double p1, double) {
      BoundaryConditionSpec bc;
      bc.c1 = {0.0, 0.0, -p1};
      return bc;
    };
    auto sweep = continuation_sweep(plan, grid);
    SweepPoint& last = sweep.back();
    if (last.status != SolveStatus::Converged) {
      out.push_back(line("wake-run spun flow", false,
                         fmt("Newton did not converge at M=30pi (status %s)",
                             to_string(last.status))));
    } else {
      last.solution.recover_fields();
      const FieldFn f = last.solution.field();
      const HarmonicFit hf = harmonic_fit(f, opts.fit_rmin, opts.fit_rmax);
      const RayProfile prof =
          ray_profile(f, log_radii(opts.fit_rmin, opts.fit_rmax, 17), 512);
      const double expo = fit_profile_exponent(prof);
      const bool ok = hf.sup_residual < 0.10 * std::abs(hf.mu) &&
                      expo >= -1.15 && expo <= -0.85;
      out.push_back(line(
          "wake-run spun flow", ok,
          fmt("M=30pi: mu %.4f (|mu| target M/4pi = %.4f), fit residual %.4f "
              "(< 10%% of |mu| = %.4f), exponent %.3f (in [-1.15, -0.85])",
              hf.mu, 30.0 * kPi / (4.0 * kPi), hf.sup_residual,
              0.10 * std::abs(hf.mu), expo)));
    }
  }
  return out;
}

std::vector<CheckLine> verify_phase_transition(
    const PhaseTransitionOptions& opts) {
  AnnularGrid grid;
  grid.r_inner = 1.0;
  grid.r_outer = opts.r_outer;
  grid.n_r = opts.n_r;
  grid.n_theta = opts.n_theta;

  ContinuationPlan plan;
  plan.param1 = {2.0 * kPi};
  plan.param2.clear();
  for (int k = 0; k < opts.n_torque_steps; ++k)
    plan.param2.push_back(4.0 * kPi * k);
  plan.make_bc = [](double p1, double p2) {
    BoundaryConditionSpec bc;
    bc.c0 = {-p1, 0.0};
    bc.c1 = {0.0, 0.0, -p2};
    return bc;
  };
  auto sweep = continuation_sweep(plan, grid);

  PhaseMapOptions pm;
  pm.fit_rmin = opts.fit_rmin;
  pm.fit_rmax = opts.fit_rmax;
  const auto rows = phase_map(sweep, pm);

  std::string detail = "exponents ";
  int n_conv = 0, n_wake_band = 0, n_vortex_band = 0;
  bool monotone = true;
  double prev = 1.0;
  double saturation_span = 0.0;
  std::vector<double> expos;
  for (const auto& row : rows) {
    if (row.status == PhaseStatus::Diverged) {
      detail += "x ";
      continue;
    }
    ++n_conv;
    expos.push_back(row.exponent);
    detail += fmt("%.2f ", row.exponent);
    if (row.exponent >= -0.45 && row.exponent <= -0.25) ++n_wake_band;
    if (row.exponent >= -1.15 && row.exponent <= -0.85) ++n_vortex_band;
    if (n_conv > 1 && row.exponent > prev + 0.03) monotone = false;
    prev = row.exponent;
  }
  if (expos.size() >= 3)
    saturation_span = std::abs(expos[expos.size() - 1] - expos[expos.size() - 3]);
  const bool ok = n_conv == static_cast<int>(rows.size()) && monotone &&
                  n_wake_band >= 1 && n_vortex_band >= 1 &&
                  saturation_span < 0.1;
  return {line(
      "phase-transition along the torque line", ok,
      fmt("%s| %d/%zu converged, non-increasing %s, wake band [-0.45, -0.25] "
          "hit %d, vortex band [-1.15, -0.85] hit %d, tail span %.3f (< 0.1)",
          detail.c_str(), n_conv, rows.size(), monotone ? "yes" : "no",
          n_wake_band, n_vortex_band, saturation_span))};
}

std::vector<CheckLine> verify_double_wake(const DoubleWakeOptions& opts) {
  std::vector<CheckLine> out;
  AnnularGrid grid;
  grid.r_inner = opts.r_inner;
  grid.r_outer = opts.r_outer;
  grid.n_r = opts.n_r;
  grid.n_theta = opts.n_theta;

  auto run = [&](double amplitude, const char* name, double lo, double hi,
                 bool check_angles) {
    ContinuationPlan plan;
    // Doubling ramp down to <= 2.5 (cold solves diverge above ~10); weak
    // forcings converge from a cold start directly.
    plan.param1 = {amplitude};
    while (plan.param1.front() > 2.5)
      plan.param1.insert(plan.param1.begin(), plan.param1.front() / 2.0);
    plan.param2 = {0.0};
    plan.make_bc = [](double, double) {
      BoundaryConditionSpec bc;
      bc.inner = InnerBCKind::Natural;
      return bc;
    };
    plan.make_forcing = [&](double p1, double) {
      return delta_forcing_with_curl(2, p1, opts.eps);
    };
    auto sweep = continuation_sweep(plan, grid);
    SweepPoint& last = sweep.back();
    if (last.status != SolveStatus::Converged) {
      out.push_back(line(name, false,
                         fmt("Newton did not converge at amplitude %g", amplitude)));
      return;
    }
    const SolverForcing forcing = delta_forcing_with_curl(2, amplitude, opts.eps);
    last.solution.recover_fields(&forcing);
    const FieldFn f = last.solution.field();
    const RayProfile prof =
        ray_profile(f, log_radii(opts.fit_rmin, opts.fit_rmax, 17), 512);
    const double expo = fit_profile_exponent(prof);
    const CircularStats cs = circular_stats(prof.a, /*fold_mod_pi=*/true);
    bool ok = expo >= lo && expo <= hi;
    std::string extra;
    if (check_angles) {
      ok = ok && cs.std < 0.3;
      extra = fmt(", axis angle mod pi: mean %.3f, circular std %.3f (< 0.3)",
                  cs.mean, cs.std);
    }
    out.push_back(line(
        name, ok,
        fmt("amplitude %g: exponent %.3f (in [%.2f, %.2f])%s", amplitude,
            expo, lo, hi, extra.c_str())));
  };

  run(opts.large_amplitude, "double-wake large amplitude", -0.5, -0.25, true);
  run(opts.small_amplitude, "double-wake small amplitude", -1.2, -0.7, false);
  return out;
}

int print_report(std::ostream& os, const std::vector<CheckLine>& lines) {
  int failed = 0;
  for (const CheckLine& l : lines) {
    os << (l.passed ? "PASS " : "FAIL ") << l.name << ": " << l.detail
       << "\n";
    if (!l.passed) ++failed;
  }
  return failed;
}

}  // namespace planeflow
