#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "planeflow/analysis.hpp"
#include "planeflow/fields.hpp"
#include "planeflow/solver.hpp"
#include "planeflow/wake.hpp"

using namespace planeflow;

namespace {

FieldFn field_of(const AnalyticField& f) {
  return [f](const Point& x) { return f.eval(x); };
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  return std::string(std::istreambuf_iterator<char>(is),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("ray profile of a pure vortex is exact and flagged degenerate") {
  const double m = 8.0 * M_PI;
  const FieldFn u = field_of(AnalyticField::harmonic_vortex(m));
  const auto radii = log_radii(50.0, 5000.0, 12);
  const RayProfile prof = ray_profile(u, radii);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double exact = m / (4.0 * M_PI * radii[k]);
    CHECK(prof.d[k] == doctest::Approx(exact).epsilon(1e-8));
    CHECK(prof.degenerate[k]);
  }
  CHECK(fit_profile_exponent(prof) == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("ray profile of a wake tracks its axis angle") {
  const Vec2 F{-16.0 / 9.0, 0.0};
  const FieldFn u = field_of(AnalyticField::wake(F));
  const auto radii = log_radii(1e2, 1e4, 9);
  const RayProfile prof = ray_profile(u, radii);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    CHECK_FALSE(prof.degenerate[k]);
    CHECK(std::abs(prof.a[k]) < 0.05);
    CHECK(prof.d[k] > 0.0);
  }
  // d(r) ~ r^{-1/3} on the axis.
  const double expo = fit_profile_exponent(prof);
  CHECK(expo > -0.45);
  CHECK(expo < -0.22);
}

TEST_CASE("double wake has two equal maxima and a tight axial spread") {
  const double phi = 0.6;
  const Vec2 F{-2.0 * std::cos(phi), -2.0 * std::sin(phi)};
  const AnalyticField wp = AnalyticField::wake(F);
  const AnalyticField wm = AnalyticField::wake(-F);
  const FieldFn u = [wp, wm](const Point& x) { return wp.eval(x) + wm.eval(x); };

  const auto radii = log_radii(1e2, 1e4, 9);
  const RayProfile prof = ray_profile(u, radii);
  const CircularStats cs = circular_stats(prof.a, /*fold_mod_pi=*/true);
  CHECK(cs.std < 0.05);
  CHECK(std::abs(wrap_angle(cs.mean - phi)) < 0.05);

  // The two opposite maxima carry the same speed.
  const double r = 1e3;
  auto speed = [&](double th) {
    return u(Point{r * std::cos(th), r * std::sin(th)}).u.norm();
  };
  CHECK(speed(phi) == doctest::Approx(speed(phi + M_PI)).epsilon(1e-10));
}

TEST_CASE("circular statistics handle wrap-around and axial folding") {
  const std::vector<double> near_pi{M_PI - 0.05, -M_PI + 0.05, M_PI - 0.02};
  const CircularStats a = circular_stats(near_pi);
  CHECK(std::abs(wrap_angle(a.mean - M_PI)) < 0.06);
  CHECK(a.std < 0.1);

  const std::vector<double> axial{0.1, 0.1 + M_PI, 0.1 - M_PI, 0.1};
  const CircularStats b = circular_stats(axial, /*fold_mod_pi=*/true);
  CHECK(b.mean == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(b.std < 1e-6);
}

TEST_CASE("harmonic fit is exact on a pure vortex and scale-equivariant") {
  const double m = 12.0 * M_PI;
  const AnalyticField hv = AnalyticField::harmonic_vortex(m);
  const FieldFn u = field_of(hv);
  const HarmonicFit fit = harmonic_fit(u, 50.0, 500.0);
  CHECK(fit.mu == doctest::Approx(-m / (4.0 * M_PI)).epsilon(1e-10));
  CHECK(fit.sup_residual < 1e-12);

  const double s = 3.7;
  const FieldFn su = [hv, s](const Point& x) { return hv.eval(x) * s; };
  const HarmonicFit sfit = harmonic_fit(su, 50.0, 500.0);
  CHECK(sfit.mu == doctest::Approx(s * fit.mu).epsilon(1e-10));
}

TEST_CASE("harmonic fit absorbs a quadratically decaying perturbation") {
  const double m = 12.0 * M_PI;
  const double eps = 1e-3, rmin = 50.0;
  const AnalyticField hv = AnalyticField::harmonic_vortex(m);
  const FieldFn u = [hv, eps](const Point& x) {
    FlowJet j = hv.eval(x);
    const double r = x.r();
    j.u += e_r(x.theta()) * (eps / (r * r));
    return j;
  };
  const HarmonicFit fit = harmonic_fit(u, rmin, 500.0);
  CHECK(fit.sup_residual <= eps / rmin * (1.0 + 1e-9));
  CHECK(fit.mu == doctest::Approx(-m / (4.0 * M_PI)).epsilon(1e-3));
}

TEST_CASE("harmonic fit rejects a wake-class field") {
  const Vec2 F{-16.0 / 9.0, 0.0};
  const FieldFn u = field_of(AnalyticField::wake(F));
  const HarmonicFit fit = harmonic_fit(u, 1e2, 1e3);
  // r|u| grows like r^{2/3} on the wake axis: the residual dwarfs any μ.
  CHECK(fit.sup_residual > std::abs(fit.mu));
  CHECK(fit.sup_residual > 1.0);
}

TEST_CASE("wake fit recovers the force of an analytic wake") {
  const Vec2 F{-16.0 / 9.0, 0.0};
  const FieldFn u = field_of(AnalyticField::wake(F));
  const WakeFitResult fit = wake_fit(u, 1e2, 1e3);
  CHECK_FALSE(fit.rejected);
  CHECK((fit.F - F).norm() < 0.02 * F.norm());
}

TEST_CASE("wake fit is rotation-equivariant") {
  const double phi = 0.7;
  const double A = 16.0 / 9.0;
  const Vec2 F{-A * std::cos(phi), -A * std::sin(phi)};
  const FieldFn u = field_of(AnalyticField::wake(F));
  const WakeFitResult fit = wake_fit(u, 1e2, 1e3);
  CHECK_FALSE(fit.rejected);
  CHECK((fit.F - F).norm() < 0.02 * F.norm());
}

TEST_CASE("wake fit with axial folding recovers a double wake") {
  const double phi = 0.4;
  const Vec2 F{-2.0 * std::cos(phi), -2.0 * std::sin(phi)};
  const AnalyticField wp = AnalyticField::wake(F);
  const AnalyticField wm = AnalyticField::wake(-F);
  const FieldFn u = [wp, wm](const Point& x) { return wp.eval(x) + wm.eval(x); };
  const WakeFitResult fit = wake_fit(u, 1e2, 1e3, /*fold_mod_pi=*/true);
  CHECK_FALSE(fit.rejected);
  CHECK(fit.F.norm() == doctest::Approx(F.norm()).epsilon(0.05));
  const double th = std::atan2(-fit.F.y, -fit.F.x);
  const double fold = std::abs(wrap_angle(2.0 * (th - phi))) / 2.0;
  CHECK(fold < 0.05);
}

TEST_CASE("wake fit rejects a pure vortex") {
  const FieldFn u = field_of(AnalyticField::harmonic_vortex(8.0 * M_PI));
  const WakeFitResult fit = wake_fit(u, 1e2, 1e3);
  CHECK(fit.rejected);
}

TEST_CASE("exponent fits of mixed decays stay bracketed") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(0.1, 10.0);
  const auto radii = log_radii(10.0, 1e4, 25);
  for (int trial = 0; trial < 20; ++trial) {
    const double c1 = coef(rng), c2 = coef(rng);
    RayProfile prof;
    prof.radii = radii;
    for (double r : radii) {
      prof.d.push_back(c1 * std::pow(r, -1.0 / 3.0) + c2 / r);
      prof.a.push_back(0.0);
      prof.degenerate.push_back(false);
    }
    const double e = fit_profile_exponent(prof);
    CHECK(e >= -1.0 - 1e-9);
    CHECK(e <= -1.0 / 3.0 + 1e-9);
  }
}

TEST_CASE("phase map summarizes a small sweep and round-trips through csv/svg") {
  AnnularGrid grid;
  grid.r_inner = 1.0;
  grid.r_outer = 100.0;
  grid.n_r = 33;
  grid.n_theta = 48;

  ContinuationPlan plan;
  plan.param1 = {M_PI, 2.0 * M_PI};
  plan.param2 = {0.0};
  plan.make_bc = [](double p1, double) {
    BoundaryConditionSpec bc;
    bc.c0 = {-p1, 0.0};
    return bc;
  };
  auto sweep = continuation_sweep(plan, grid);
  REQUIRE(sweep.size() == 2);
  for (const auto& pt : sweep) REQUIRE(pt.status == SolveStatus::Converged);

  PhaseMapOptions opts;
  opts.fit_rmin = 5.0;
  opts.fit_rmax = 50.0;
  opts.n_radii = 12;
  opts.n_theta = 128;
  opts.n_quad = 128;
  const auto rows = phase_map(sweep, opts);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.status != PhaseStatus::Diverged);
    CHECK(std::isfinite(row.exponent));
    CHECK(std::isfinite(row.body_force.x));
    CHECK(row.exponent < 0.0);
  }
  // Pulling strength doubles: the pulled flow should not weaken.
  CHECK(rows[1].body_force.norm() >= 0.0);

  write_phasemap_csv("phasemap_test.csv", rows);
  const std::string pm = slurp("phasemap_test.csv");
  CHECK(pm.rfind("param1,param2,exponent,mean_angle,angle_std,Fx,Fy,M,status",
                 0) == 0);
  CHECK(pm.find("ok") != std::string::npos);

  const FieldFn u = sweep[0].solution.field();
  const RayProfile prof = ray_profile(u, log_radii(5.0, 50.0, 12));
  write_profile_csv("profile_test.csv", prof);
  const std::string pr = slurp("profile_test.csv");
  CHECK(pr.rfind("r,d,a", 0) == 0);

  std::vector<PlotSeries> series(2);
  series[0].name = "r^{1/3} d(r)";
  series[1].name = "r d(r)";
  for (std::size_t k = 0; k < prof.radii.size(); ++k) {
    series[0].x.push_back(prof.radii[k]);
    series[0].y.push_back(std::cbrt(prof.radii[k]) * prof.d[k]);
    series[1].x.push_back(prof.radii[k]);
    series[1].y.push_back(prof.radii[k] * prof.d[k]);
  }
  svg_line_plot("profile_test.svg", "compensated profiles", "r", "value",
                series);
  const std::string svg = slurp("profile_test.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("<!-- data") != std::string::npos);

  std::vector<double> p1, p2, z;
  for (const auto& row : rows) {
    p1.push_back(row.param1);
    p2.push_back(row.param2);
    z.push_back(row.exponent);
  }
  svg_heatmap("phasemap_test.svg", "decay exponent", "param1", "param2", p1,
              p2, z);
  const std::string hm = slurp("phasemap_test.svg");
  CHECK(hm.find("<svg") != std::string::npos);
  CHECK(hm.find("<rect") != std::string::npos);

  std::remove("phasemap_test.csv");
  std::remove("profile_test.csv");
  std::remove("profile_test.svg");
  std::remove("phasemap_test.svg");
}
