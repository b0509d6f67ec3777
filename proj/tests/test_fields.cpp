#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "planeflow/fields.hpp"
#include "planeflow/residual.hpp"

using namespace planeflow;

namespace {

const std::vector<Point> far_points = {
    {2.5, 0.0},  {-1.8, 1.9}, {4.0, -3.0},  {0.4, 7.0},
    {-23.0, 11.0}, {31.0, 0.1}, {-0.2, -45.0}};

double grad_scale(const FlowJet& j) {
  const Mat2& g = j.grad_u;
  return std::max(1.0, std::sqrt(g.a11 * g.a11 + g.a12 * g.a12 +
                                 g.a21 * g.a21 + g.a22 * g.a22));
}

double residual_scale(const FlowJet& j) {
  return std::max({1e-12, j.laplacian_u().norm(), j.grad_p.norm(),
                   j.convective().norm()});
}

void check_operator_exact(const AnalyticField& f, const OperatorKind& op,
                          const Point& x, double tol = 1e-10) {
  const FlowJet jet = f.eval(x);
  const OperatorResult res = apply_operator(op, jet);
  CHECK(std::abs(res.div) < tol * grad_scale(jet));
  CHECK(res.f.norm() < tol * residual_scale(jet));
}

// Central-difference cross-check of the jet derivatives of a field.
void check_jet_consistency(const AnalyticField& f, const Point& x) {
  const FlowJet jet = f.eval(x);
  const double h = 1e-5 * std::max(1.0, x.r());
  FlowJet px = f.eval({x.x1 + h, x.x2});
  FlowJet mx = f.eval({x.x1 - h, x.x2});
  FlowJet py = f.eval({x.x1, x.x2 + h});
  FlowJet my = f.eval({x.x1, x.x2 - h});
  const double scale = grad_scale(jet);
  CHECK(std::abs((px.u.x - mx.u.x) / (2 * h) - jet.grad_u.a11) < 1e-6 * scale);
  CHECK(std::abs((py.u.x - my.u.x) / (2 * h) - jet.grad_u.a12) < 1e-6 * scale);
  CHECK(std::abs((px.u.y - mx.u.y) / (2 * h) - jet.grad_u.a21) < 1e-6 * scale);
  CHECK(std::abs((py.u.y - my.u.y) / (2 * h) - jet.grad_u.a22) < 1e-6 * scale);
  const double pscale = std::max(1.0, jet.grad_p.norm());
  CHECK(std::abs((px.p - mx.p) / (2 * h) - jet.grad_p.x) < 1e-5 * pscale);
  CHECK(std::abs((py.p - my.p) / (2 * h) - jet.grad_p.y) < 1e-5 * pscale);
  // Laplacian of u against second differences of the velocity.
  const Vec2 lap_fd =
      (px.u + mx.u + py.u + my.u - jet.u * 4.0) * (1.0 / (h * h));
  const Vec2 lap = jet.laplacian_u();
  CHECK((lap - lap_fd).norm() < 1e-4 * std::max(1.0, lap.norm()));
}

}  // namespace

TEST_CASE("fundamental solution column solves the Stokes system") {
  for (int j = 0; j < 2; ++j) {
    const AnalyticField f = AnalyticField::stokes_column(j);
    for (const Point& x : far_points)
      check_operator_exact(f, OperatorKind::stokes(), x);
  }
}

TEST_CASE("fundamental solution contraction matches the column field") {
  const Vec2 C{1.3, -0.7};
  for (const Point& x : far_points) {
    Mat2 E;
    Vec2 e;
    eval_stokes_fundamental(x, E, e);
    const Vec2 u = E * C;
    const double p = e.dot(C);
    const FlowJet col0 = eval_stokes_fundamental_column(0, x);
    const FlowJet col1 = eval_stokes_fundamental_column(1, x);
    const Vec2 usum = col0.u * C.x + col1.u * C.y;
    CHECK((u - usum).norm() < 1e-14 * std::max(1.0, u.norm()));
    CHECK(p == doctest::Approx(col0.p * C.x + col1.p * C.y).epsilon(1e-13));
  }
}

TEST_CASE("leading asymptotic term equals the contracted fundamental solution") {
  const std::vector<double> C = {1.3, -0.7};
  const AnalyticField f = AnalyticField::asym_term(0, C);
  for (const Point& x : far_points) {
    Mat2 E;
    Vec2 e;
    eval_stokes_fundamental(x, E, e);
    const FlowJet jet = f.eval(x);
    const Vec2 u = E * Vec2{C[0], C[1]};
    CHECK((jet.u - u).norm() < 1e-12 * std::max(1.0, u.norm()));
    CHECK(jet.p == doctest::Approx(e.dot({C[0], C[1]})).epsilon(1e-12));
  }
}

TEST_CASE("asymptotic terms solve the Stokes system outside the cutoff") {
  const std::vector<AnalyticField> fields = {
      AnalyticField::asym_term(0, {1.3, -0.7}),
      AnalyticField::asym_term(1, {0.9, -1.4, 2.2}),
      AnalyticField::asym_term(2, {1.1, -0.3, 0.8, -1.7}),
  };
  for (const AnalyticField& f : fields)
    for (const Point& x : far_points) {
      check_operator_exact(f, OperatorKind::stokes(), x);
      check_jet_consistency(f, x);
    }
}

TEST_CASE("flux carrier: radial potential flow, exact outside the band") {
  const AnalyticField f = AnalyticField::flux_carrier(3.7);
  for (const Point& x : far_points) {
    check_operator_exact(f, OperatorKind::stokes(), x);
  }
  // Inside the band the field interpolates; its divergence is χ′-driven.
  const FlowJet mid = f.eval({1.5, 0.0});
  CHECK(mid.divergence() ==
        doctest::Approx(3.7 * CutoffProfile{}.chi_prime(1.5) / (2 * M_PI * 1.5))
            .epsilon(1e-10));
  // Inside the cutoff the field vanishes identically.
  CHECK(f.eval({0.3, 0.4}).u.norm() == 0.0);
  check_jet_consistency(f, {1.37, 0.41});
}

TEST_CASE("circular vortex solves the momentum equation outside the band") {
  const AnalyticField f = AnalyticField::harmonic_vortex(5.0);
  for (const Point& x : far_points) {
    check_operator_exact(f, OperatorKind::navier_stokes(1.0), x);
    const FlowJet jet = f.eval(x);
    CHECK(std::abs(jet.divergence()) < 1e-12 * grad_scale(jet));
  }
  check_jet_consistency(f, {1.72, -0.55});
  // Everywhere divergence-free (stream-function construction).
  const FlowJet mid = f.eval({1.2, 0.9});
  CHECK(std::abs(mid.divergence()) < 1e-12 * grad_scale(mid));
}

TEST_CASE("radial-jet solution solves the full momentum equation") {
  const AnalyticField f = AnalyticField::hamel(2.0, 0.4);
  for (const Point& x : far_points) {
    check_operator_exact(f, OperatorKind::navier_stokes(1.0), x);
    check_jet_consistency(f, x);
  }
  // Known velocity components: u_r = -3/(2r), u_θ = A/(2√r) + μ/r.
  const Point x{3.0, 0.0};
  const FlowJet jet = f.eval(x);
  CHECK(jet.u.x == doctest::Approx(-1.5 / 3.0).epsilon(1e-13));
  CHECK(jet.u.y ==
        doctest::Approx(2.0 / (2.0 * std::sqrt(3.0)) + 0.4 / 3.0)
            .epsilon(1e-13));
}

TEST_CASE("inviscid leading-order solution solves the Euler system") {
  const AnalyticField f = AnalyticField::euler_leading(1.5, 0.6, 0.7);
  for (const Point& x : far_points) {
    check_operator_exact(f, OperatorKind::euler(), x);
    check_jet_consistency(f, x);
    const FlowJet jet = f.eval(x);
    CHECK(std::abs(jet.divergence()) < 1e-12 * grad_scale(jet));
  }
}

TEST_CASE("net-force formula limits") {
  CHECK(euler_net_force_formula(1.0, 0.0, 0.3).norm() == 0.0);
  const Vec2 F = euler_net_force_formula(1.0, 0.6, 0.0);
  CHECK(F.x == doctest::Approx(M_PI * M_PI / 3.0).epsilon(1e-12));
  CHECK(F.y == doctest::Approx(0.0));
}

TEST_CASE("second-order corrector cancels the quadratic coupling") {
  const std::vector<double> A = {2.0, 1.1, -0.7, 1.6};
  const double nu = 0.8;
  const AnalyticField corr = AnalyticField::cross_corrector(A, nu);
  for (const Point& x : far_points) {
    // ū₁ outside the cutoff band: flux part + first-order asymptotic term.
    const FlowJet u1 = eval_flux_carrier(A[0], x) +
                       eval_asym_term(1, {A[1], A[2], A[3]}, x);
    const FlowJet u2 = corr.eval(x);
    const OperatorResult stokes = apply_operator(OperatorKind::stokes(), u2);
    const Vec2 target = u1.convective() * nu;
    CHECK((stokes.f - target).norm() <
          1e-12 * std::max(1.0, target.norm()));
    CHECK(std::abs(stokes.div) < 1e-12 * grad_scale(u2));
  }
  check_jet_consistency(corr, {5.0, -2.0});
}

TEST_CASE("corrector amplitude diagnostic") {
  const std::vector<double> A = {2.0, 1.1, -0.7, 1.6};
  CHECK(cross_corrector_a2(A, A2Variant::Squared) ==
        doctest::Approx(std::sqrt(4.0 * 4.0 + 1.6 * 1.6)));
  CHECK(cross_corrector_a2(A, A2Variant::PrintedLinear) ==
        doctest::Approx(std::sqrt(4.0 * 4.0 + 1.6)));
}

TEST_CASE("perturbative iterates: structure and decay") {
  const double A = 1.4, B = -0.8, M = 2.0;
  // Order 1 is exactly divergence-free.
  const AnalyticField f1 = AnalyticField::perturb_iterate(1, A, B, M);
  for (const Point& x : far_points) {
    const FlowJet jet = f1.eval(x);
    CHECK(std::abs(jet.divergence()) < 1e-12 * grad_scale(jet));
  }
  check_jet_consistency(f1, {6.0, 2.0});

  // Decay exponents of |u| along a fixed ray (log factors shift the fit).
  auto mag = [&](int order) {
    const AnalyticField f = AnalyticField::perturb_iterate(order, A, B, M);
    return [f](double r) {
      return f.eval({r * std::cos(0.4), r * std::sin(0.4)}).u.norm();
    };
  };
  const DecayFit d1 = fit_decay_along(mag(1), 1e2, 1e4);
  CHECK(d1.exponent == doctest::Approx(-1.0).epsilon(1e-3));
  const DecayFit d2 = fit_decay_along(mag(2), 1e2, 1e4);
  CHECK(d2.exponent > -1.0);
  CHECK(d2.exponent < -0.8);
  const DecayFit d3 = fit_decay_along(mag(3), 1e2, 1e4);
  CHECK(d3.exponent > -1.0);
  CHECK(d3.exponent < -0.6);

  // Zero-rotation third order flips sign with the stated negative constant.
  const AnalyticField f3 = AnalyticField::perturb_iterate(3, 1.0, 0.0, 0.0);
  const FlowJet j3 = f3.eval({100.0, 0.0});
  CHECK(j3.u.x < 0.0);
}

TEST_CASE("parameter covariance of the order-1 iterate under rotation") {
  const double A = 1.4, B = -0.8, M = 2.0, phi = 0.83;
  // Rotating the observation frame rotates (A, B) by 2φ and fixes M.
  const double c2 = std::cos(2 * phi), s2 = std::sin(2 * phi);
  const double Ar = c2 * A + s2 * B, Br = -s2 * A + c2 * B;
  const AnalyticField f = AnalyticField::perturb_iterate(1, A, B, M);
  const AnalyticField fr = AnalyticField::perturb_iterate(1, Ar, Br, M);
  const Mat2 Q = rotation(phi);
  for (const Point& x : far_points) {
    const Vec2 ux = Q * fr.eval(x).u;
    const Point qx = rotate(x, phi);
    const Vec2 uq = f.eval(qx).u;
    CHECK((ux - uq).norm() < 1e-13);
  }
}

TEST_CASE("rotation equivariance of the isotropic families") {
  const std::vector<AnalyticField> fields = {
      AnalyticField::flux_carrier(3.7), AnalyticField::harmonic_vortex(5.0),
      AnalyticField::hamel(2.0, 0.4)};
  const double phi = -1.21;
  const Mat2 Q = rotation(phi);
  for (const AnalyticField& f : fields)
    for (const Point& x : far_points) {
      const FlowJet a = f.eval(rotate(x, phi));
      const FlowJet b = f.eval(x);
      CHECK((a.u - Q * b.u).norm() < 1e-12 * std::max(1.0, b.u.norm()));
      CHECK(a.p == doctest::Approx(b.p).epsilon(1e-11));
    }
  // The inviscid solution rotates through its phase parameter.
  const AnalyticField e1 = AnalyticField::euler_leading(1.5, 0.6, 0.7);
  const AnalyticField e2 = AnalyticField::euler_leading(1.5, 0.6, 0.7 + phi);
  for (const Point& x : far_points) {
    const FlowJet a = e2.eval(rotate(x, phi));
    const FlowJet b = e1.eval(x);
    CHECK((a.u - Q * b.u).norm() < 1e-12 * std::max(1.0, b.u.norm()));
    CHECK(a.p == doctest::Approx(b.p).epsilon(1e-12));
  }
}

TEST_CASE("cutoff profile is C2 with consistent derivatives") {
  const CutoffProfile c{1.0, 2.0};
  CHECK(c.chi(1.0) == 0.0);
  CHECK(c.chi(2.0) == 1.0);
  CHECK(c.chi_prime(1.0 + 1e-9) < 1e-15);
  CHECK(c.chi_prime(2.0 - 1e-9) < 1e-15);
  // Second derivative vanishes linearly at the junction (C² but not C³).
  CHECK(c.chi_second(1.0 + 1e-7) < 1e-5);
  for (double r : {1.1, 1.5, 1.9}) {
    const double h = 1e-6;
    CHECK(std::abs((c.chi(r + h) - c.chi(r - h)) / (2 * h) - c.chi_prime(r)) <
          1e-8);
    CHECK(std::abs((c.chi_prime(r + h) - c.chi_prime(r - h)) / (2 * h) -
                   c.chi_second(r)) < 1e-6);
  }
}

TEST_CASE("domain checks reject invalid evaluation points") {
  CHECK_THROWS_AS(eval_asym_term(1, {1, 0, 0}, {0.5, 0.0}, CutoffProfile{}),
                  std::domain_error);
  CHECK_THROWS_AS(AnalyticField::hamel(1.0, 0.0).eval({0.0, 0.0}),
                  std::domain_error);
  CHECK_THROWS_AS(eval_cross_corrector({1, 0, 0, 0}, 1.0, {0.5, 0.0},
                                       CutoffProfile{}),
                  std::domain_error);
  CHECK_THROWS_AS(eval_euler_leading(1.0, 1.5, 0.0, {1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("named construction covers every family") {
  const std::vector<std::pair<std::string, std::map<std::string, double>>>
      cases = {
          {"stokes-column", {{"j", 1}}},
          {"asym0", {{"c1", 1.0}, {"c2", -0.5}}},
          {"asym1", {{"c1", 1.0}, {"c2", 0.0}, {"c3", 2.0}}},
          {"asym2", {{"a1", 1.0}, {"a2", 0.0}, {"a3", 0.5}, {"a4", 0.0}}},
          {"flux", {{"phi", 2.0}}},
          {"harmonic", {{"M", 3.0}}},
          {"hamel", {{"A", 1.0}, {"mu", 0.2}}},
          {"euler", {{"A", 1.0}, {"lambda", 0.5}, {"theta0", 0.1}}},
          {"wake", {{"Fx", -1.0}, {"Fy", 0.0}}},
          {"corrector",
           {{"a0", 1.0}, {"a1", 0.5}, {"a2", 0.0}, {"a3", 0.3}, {"nu", 1.0}}},
          {"iterate", {{"order", 2}, {"A", 1.0}, {"B", 0.0}, {"M", 1.0}}},
      };
  for (const auto& [name, kv] : cases) {
    const AnalyticField f = AnalyticField::from_name(name, kv);
    CHECK(f.name() == name);
    const FlowJet jet = f.eval({11.0, 3.0});
    CHECK(std::isfinite(jet.u.x));
    CHECK(std::isfinite(jet.p));
  }
  CHECK_THROWS_AS(AnalyticField::from_name("nope", {}), std::invalid_argument);
  CHECK_THROWS_AS(AnalyticField::from_name("hamel", {{"mu", 1.0}}),
                  std::invalid_argument);
}
