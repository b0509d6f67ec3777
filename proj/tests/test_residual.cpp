#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "planeflow/fields.hpp"
#include "planeflow/residual.hpp"

using namespace planeflow;

namespace {

// Manufactured compact solution: ψ = e^{-r²}, p = x₁ e^{-r²}.
FlowJet manufactured(const Point& x) {
  const Jet3 X1 = Jet3::variable(x.x1, 0);
  const Jet3 X2 = Jet3::variable(x.x2, 1);
  const Jet3 g = exp(-(X1 * X1 + X2 * X2));
  return flowjet_from_stream(g, X1 * g);
}

// Forcing that makes the manufactured pair the decaying solution of
// Δu − ∇p = f (the convention of the convolution kernel).
Vec2 manufactured_forcing(const Point& x) {
  const FlowJet jet = manufactured(x);
  return jet.laplacian_u() - jet.grad_p;
}

}  // namespace

TEST_CASE("decay fit recovers an exact power law") {
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i < 16; ++i) {
    const double r = 2.0 * std::pow(10.0, i / 5.0);
    samples.emplace_back(r, 3.2 * std::pow(r, -2.5));
  }
  const DecayFit fit = fit_decay(samples);
  CHECK(fit.exponent == doctest::Approx(-2.5).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(3.2).epsilon(1e-10));
  CHECK(fit.rms_log_residual < 1e-12);
  CHECK(fit.n_samples == 16);
}

TEST_CASE("decay fit input validation") {
  std::vector<std::pair<double, double>> few = {{1, 1}, {2, 1}, {3, 1}};
  CHECK_THROWS_AS(fit_decay(few), std::invalid_argument);
  std::vector<std::pair<double, double>> bad(10, {1.0, 1.0});
  bad[3].second = 0.0;
  CHECK_THROWS_AS(fit_decay(bad), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay_along([](double) { return 1.0; }, 5.0, 2.0),
                  std::invalid_argument);
}

TEST_CASE("operator application falls back to finite differences") {
  const AnalyticField f = AnalyticField::hamel(2.0, 0.4);
  // Strip the Hessian so the Laplacian must come from differencing u.
  FieldFn stripped = [&](const Point& x) {
    FlowJet jet = f.eval(x);
    jet.has_hessian = false;
    return jet;
  };
  const Point x{4.0, -2.5};
  const OperatorResult exact =
      apply_operator(OperatorKind::navier_stokes(1.0), f, x);
  const OperatorResult fd =
      apply_operator(OperatorKind::navier_stokes(1.0), stripped, x);
  CHECK(exact.f.norm() < 1e-12);
  CHECK(fd.f.norm() < 1e-6);
  CHECK(fd.div == doctest::Approx(exact.div));
}

TEST_CASE("operator kinds differ by the expected terms") {
  const AnalyticField f = AnalyticField::hamel(2.0, 0.0);
  const Point x{2.0, 1.0};
  const FlowJet jet = f.eval(x);
  const Vec2 ns = apply_operator(OperatorKind::navier_stokes(1.0), jet).f;
  const Vec2 st = apply_operator(OperatorKind::stokes(), jet).f;
  const Vec2 eu = apply_operator(OperatorKind::euler(), jet).f;
  CHECK((st - ns - jet.convective()).norm() < 1e-12);
  CHECK((eu + jet.convective() + jet.grad_p).norm() < 1e-14);
  // Half viscosity halves the convective weight in the residual.
  const Vec2 ns_half = apply_operator(OperatorKind::navier_stokes(0.5), jet).f;
  CHECK((ns_half - st + jet.convective() * 0.5).norm() < 1e-12);
}

TEST_CASE("angular profile identity holds exactly and detects perturbation") {
  const double A = 1.7, lambda = 0.55, th0 = 0.9;
  for (int k = 0; k < 12; ++k) {
    const double th = 2.0 * M_PI * k / 12.0;
    CHECK(std::abs(euler_ode_residual(A, lambda, th0, th)) < 1e-12 * A * A);
    // Scaling the profile by (1+ε) leaves a residual of 2εA² + O(ε²).
    const double eps = 1e-3;
    const Jet3 t = Jet3::variable(th, 0);
    const Jet3 phi = (1 + eps) * A * sqrt(1.0 - lambda * cos(t - th0));
    const double pert = euler_ode_expression(phi.v, phi.d[0], phi.dd[0], A);
    CHECK(pert == doctest::Approx(2 * eps * A * A).epsilon(2e-3));
  }
}

TEST_CASE("second-order angular correction: constant case and integral") {
  const EulerCorrection flat = solve_euler_correction(1.3, 0.0, 0.0, 32);
  for (double v : flat.phi1) CHECK(v == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(flat.integral == doctest::Approx(3.0 * M_PI).epsilon(1e-10));
  CHECK(flat.linear_residual < 1e-10);

  const double lambda = 0.5;
  const EulerCorrection c = solve_euler_correction(1.0, lambda, 0.0, 64);
  CHECK(c.linear_residual < 1e-10);
  CHECK(c.integral ==
        doctest::Approx(3.0 * M_PI / std::sqrt(1.0 - lambda * lambda))
            .epsilon(1e-8));
  // Interpolation reproduces the nodes and stays smooth between them.
  CHECK(c.value(c.theta[5]) == doctest::Approx(c.phi1[5]).epsilon(1e-12));
  const double mid = 0.5 * (c.theta[5] + c.theta[6]);
  CHECK(c.value(mid) > std::min(c.phi1[5], c.phi1[6]) - 0.1);
  CHECK(c.value(mid) < std::max(c.phi1[5], c.phi1[6]) + 0.1);

  // The drift parameter does not change the mean (its terms integrate out).
  const EulerCorrection cmu = solve_euler_correction(1.0, lambda, 0.7, 64);
  CHECK(cmu.integral == doctest::Approx(c.integral).epsilon(1e-6));
}

TEST_CASE("convolution oracle reproduces a manufactured compact solution") {
  ForceField f;
  f.f = manufactured_forcing;
  f.support_radius = 6.5;

  for (const Point& x : {Point{0.7, -0.3}, Point{3.0, 1.0}, Point{0.0, 0.0}}) {
    const FlowJet ref = manufactured(x);
    const FlowJet conv = stokes_convolution(f, x, {96, 256});
    CHECK((conv.u - ref.u).norm() < 1e-5);
    CHECK(std::abs(conv.p - ref.p) < 1e-4);
    CHECK((conv.grad_u - ref.grad_u).a11 < 1e-4);
    CHECK(std::abs(conv.grad_u.a12 - ref.grad_u.a12) < 1e-4);
    CHECK(std::abs(conv.grad_u.trace()) < 1e-4);
    CHECK_FALSE(conv.has_hessian);
  }
}

TEST_CASE("convolution oracle matches the far-field fundamental solution") {
  // A narrow blob of net weight C behaves like C·(fundamental solution).
  const Vec2 C{1.1, -0.6};
  const double eps = 0.05;
  ForceField f;
  f.support_radius = 2.0;
  f.f = [&](const Point& y) {
    const double w = std::exp(-y.vec().norm2() / eps) / (M_PI * eps);
    return C * w;
  };
  const Point x{9.0, -4.0};
  Mat2 E;
  Vec2 e;
  eval_stokes_fundamental(x, E, e);
  const FlowJet conv = stokes_convolution(f, x, {96, 256});
  CHECK((conv.u - E * C).norm() < 2e-4);
  CHECK(conv.p == doctest::Approx(e.dot(C)).epsilon(1e-3));
}
