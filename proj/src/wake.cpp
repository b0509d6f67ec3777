#include "planeflow/wake.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "planeflow/residual.hpp"

namespace planeflow {

namespace {

constexpr double kPi = M_PI;
const double kSqrt3 = std::sqrt(3.0);

// Stable hyperbolic helpers (no overflow for large |z|).
double sech_d(double z) {
  const double e = std::exp(-std::abs(z));
  return 2.0 * e / (1.0 + e * e);
}
double log2cosh_d(double z) {
  const double a = std::abs(z);
  return a + std::log1p(std::exp(-2.0 * a));
}

Jet3 sech_j(const Jet3& z) {
  const double s = sech_d(z.v);
  const double t = std::tanh(z.v);
  const double f1 = -s * t;
  const double f2 = s * (t * t - s * s);
  const double f3 = s * t * (5.0 * s * s - t * t);
  return z.compose(s, f1, f2, f3);
}

Jet3 log2cosh_j(const Jet3& z) {
  const double t = std::tanh(z.v);
  const double s2 = 1.0 - t * t;
  return z.compose(log2cosh_d(z.v), t, s2, -2.0 * s2 * t);
}

// φ₀, φ₁ and their pressure companions as jets of ζ = x̄₂.
Jet3 phi0_j(double a, const Jet3& zeta) {
  return -2.0 * a * tanh(a * zeta);
}

Jet3 phi1_j(double a, const Jet3& zeta) {
  const Jet3 az = a * zeta;
  const Jet3 sech = sech_j(az);
  return kSqrt3 * ((2.0 / 3.0) * az - tanh(az) - az * sech * sech);
}

Jet3 rho0_j(double a, const Jet3& zeta) {
  // Closed-form antiderivative of (−3φ₀″ + 2ζφ₀′² − φ₀φ₀′)/9, normalized to
  // vanish at infinity; this choice makes the transverse momentum residual
  // drop to the next order.
  const Jet3 az = a * zeta;
  const Jet3 th = tanh(az);
  const Jet3 sech = sech_j(az);
  return (4.0 * a * a / 27.0) *
         (4.0 * az * th - 4.0 * log2cosh_j(az) +
          (2.0 * az * th + 7.0) * sech * sech);
}

Jet3 rho1_j(double a, const Jet3& zeta) {
  const Jet3 az = a * zeta;
  const Jet3 sech = sech_j(az);
  const Jet3 s4 = sech * sech * sech * sech;
  // sech⁴·(… cosh 2az …) rewritten with bounded factors:
  // sech⁴·cosh(2az) = sech²(2 − sech²), sech⁴·sinh(2az) = 2 tanh·sech².
  const Jet3 th = tanh(az);
  const Jet3 s2 = sech * sech;
  return (2.0 * kSqrt3 * a / 27.0) *
         (6.0 * az * az * s4 - 8.0 * az * th * s2 + 7.0 * s2 * (2.0 - s2) +
          7.0 * s4);
}

// Next-order transverse pressure profile ρ₂: the coefficient of x̄₁⁻⁶ in the
// pressure that cancels the x̄₁⁻⁸ transverse momentum residual of the full
// ansatz (derived symbolically from the exact residual expansion; the
// antiderivative is not elementary, so the value is tabulated once while all
// derivatives come from the closed-form integrand).
//
// ρ₂(x̄₂) = Q(a·x̄₂) with Q(ζ) = ∫₀^ζ P, P odd and P(±∞) = ∓2√3/(3π).
Jet3 rho2_integrand(const Jet3& zt) {
  const Jet3 t = tanh(zt);
  const Jet3 s2 = 1.0 - t * t;
  const Jet3 L = log2cosh_j(zt);
  const Jet3 z2 = zt * zt;
  const Jet3 g3 = (12.0 * kPi) * z2 * zt * s2 * s2 * (5.0 - 9.0 * t * t);
  const Jet3 g2 =
      z2 * (36.0 * kSqrt3 * t * s2 -
            8.0 * kPi * t * (8.0 + s2 * (1.0 + 27.0 * t * t)));
  const Jet3 g1 = zt * (135.0 * kSqrt3 * s2 +
                        kPi * (64.0 * L + s2 * (81.0 * t * t - 85.0 - 27.0 * s2)));
  const Jet3 g0 = (9.0 * kSqrt3) * t;
  return (-2.0 / (27.0 * kPi)) * (g3 + g2 + g1 + g0);
}

// Cumulative table of Q on [0, 40] (beyond which P equals its asymptote to
// machine precision), built once with 16-point Gauss-Legendre panels.
constexpr double kQStep = 0.25;
constexpr int kQPanels = 160;  // covers [0, 40]
const double kPAsym = -2.0 * kSqrt3 / (3.0 * kPi);

double rho2_integrand_value(double z) { return rho2_integrand(Jet3(z)).v; }

// 16-point Gauss-Legendre on [a, b] of the scalar integrand.
double q_panel(double a, double b) {
  static const double gx[8] = {
      0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
      0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
      0.9445750230732326, 0.9894009349916499};
  static const double gw[8] = {
      0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
      0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
      0.0622535239386479, 0.0271524594117541};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 8; ++i)
    acc += gw[i] * (rho2_integrand_value(mid - half * gx[i]) +
                    rho2_integrand_value(mid + half * gx[i]));
  return half * acc;
}

const std::array<double, kQPanels + 1>& q_table() {
  static const std::array<double, kQPanels + 1> table = [] {
    std::array<double, kQPanels + 1> t{};
    t[0] = 0.0;
    for (int k = 0; k < kQPanels; ++k)
      t[k + 1] = t[k] + q_panel(k * kQStep, (k + 1) * kQStep);
    return t;
  }();
  return table;
}

double q_value(double v) {
  const double av = std::abs(v);  // Q is even
  const auto& tab = q_table();
  const double vmax = kQPanels * kQStep;
  if (av >= vmax) return tab[kQPanels] + kPAsym * (av - vmax);
  const int k = static_cast<int>(av / kQStep);
  return tab[k] + q_panel(k * kQStep, av);
}

// ρ₂ as a jet of x̄₂: value from the table, derivatives from the integrand.
Jet3 rho2_j(double a, const Jet3& zeta) {
  const Jet3 w = a * zeta;
  const Jet3 pj = rho2_integrand(Jet3::variable(w.v, 0));
  return w.compose(q_value(w.v), pj.v, pj.d[0], pj.dd[0]);
}

// Odd C² angular ramp: 0 for |θ| ≤ 2π/3, ±1 at θ = ±π, quintic in between.
Jet3 slit_ramp(const Jet3& theta) {
  const double lo = 2.0 * kPi / 3.0, w = kPi - lo;
  const double av = std::abs(theta.v);
  if (av <= lo) return Jet3(0.0);
  const double sgn = theta.v >= 0.0 ? 1.0 : -1.0;
  const Jet3 t = (sgn * theta - lo) * (1.0 / w);
  return sgn * t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

struct WakeEval {
  Jet3 psi;
  Jet3 p;
};

// Raw stream function (before the slit blend) as a function of the conformal
// jets; include_second toggles the (φ₁, ρ₁) pair.
WakeEval raw_wake(double a, const Jet3& xb1, const Jet3& xb2,
                  const Jet3& theta_hat, bool include_second) {
  WakeEval out;
  out.psi = xb1 * phi0_j(a, xb2) + (kSqrt3 / kPi) * theta_hat;
  const Jet3 xb1_4 = xb1 * xb1 * xb1 * xb1;
  out.p = rho0_j(a, xb2) / xb1_4;
  if (include_second) {
    out.psi += phi1_j(a, xb2);
    out.p += rho1_j(a, xb2) / (xb1_4 * xb1);
    out.p += rho2_j(a, xb2) / (xb1_4 * xb1 * xb1);
  }
  // For the full ansatz, subtract the isotropic part of the total head
  // |u|²/2 + p evaluated away from the wake core. Outside the wake the flow
  // is irrotational, so the momentum residual reduces to minus the gradient
  // of the head; removing its radial part leaves only an angular O(r^{-5/3})
  // head whose gradient decays like r^{-8/3} in both Cartesian components of
  // the wake frame. The truncated ansatz is kept as printed.
  if (include_second) {
    const Jet3 rb2 = xb1 * xb1 + xb2 * xb2;  // = r^{2/3}
    const double c4 = 8.0 * a * a / 27.0;
    const double c6 = 3.0 / (2.0 * kPi * kPi);
    out.p -= c4 / (rb2 * rb2) + c6 / (rb2 * rb2 * rb2);
  }
  return out;
}

// Stream-function value on the upper lip of the slit (θ̂ = π) as a jet of r;
// exponentially small in r^{1/3}, subtracted with an odd angular ramp to make
// the velocity exactly continuous across the slit.
Jet3 slit_value(double a, const Jet3& r, bool include_second) {
  const Jet3 rp = pow(r, 1.0 / 3.0);
  const Jet3 xb1 = 0.5 * rp;             // cos(π/3)·r^{1/3}
  const Jet3 xb2 = (kSqrt3 / 2.0) * rp;  // sin(π/3)·r^{1/3}
  Jet3 psi = xb1 * phi0_j(a, xb2) + kSqrt3;
  if (include_second) psi += phi1_j(a, xb2);
  return psi;
}

FlowJet eval_wake_impl(const Vec2& F, const Point& x, bool include_second) {
  const WakeParameters wp = WakeParameters::from_force(F);
  if (x.r() <= 0.0)
    throw std::domain_error("eval_wake: point at the origin");

  const Jet3 X1 = Jet3::variable(x.x1, 0);
  const Jet3 X2 = Jet3::variable(x.x2, 1);
  // Rotate into the wake frame (axis along θ = θ₀).
  const double c0 = std::cos(wp.theta0), s0 = std::sin(wp.theta0);
  const Jet3 y1 = c0 * X1 + s0 * X2;
  const Jet3 y2 = -s0 * X1 + c0 * X2;
  const Jet3 r = jet_norm(y1, y2);
  const Jet3 theta_hat = atan2(y2, y1);

  const Jet3 rp = pow(r, 1.0 / 3.0);
  const Jet3 th3 = theta_hat * (1.0 / 3.0);
  const Jet3 xb1 = rp * cos(th3);
  const Jet3 xb2 = rp * sin(th3);

  WakeEval we = raw_wake(wp.a, xb1, xb2, theta_hat, include_second);
  we.psi -= slit_value(wp.a, r, include_second) * slit_ramp(theta_hat);
  return flowjet_from_stream(we.psi, we.p);
}

}  // namespace

ConformalCoords to_conformal(const Point& x, double p) {
  if (x.r() <= 0.0)
    throw std::domain_error("to_conformal: point at the origin");
  const double rp = std::pow(x.r(), p);
  return {rp * std::cos(p * x.theta()), rp * std::sin(p * x.theta()), p};
}

Point from_conformal(const ConformalCoords& c) {
  const double rb = std::hypot(c.xbar1, c.xbar2);
  if (rb <= 0.0)
    throw std::domain_error("from_conformal: point at the origin");
  const double r = std::pow(rb, 1.0 / c.p);
  const double th = std::atan2(c.xbar2, c.xbar1) / c.p;
  return {r * std::cos(th), r * std::sin(th)};
}

WakeParameters WakeParameters::from_force(const Vec2& F) {
  const double mag = F.norm();
  if (mag <= 0.0)
    throw std::invalid_argument("wake: net force must be nonzero");
  WakeParameters wp;
  wp.F = F;
  wp.a = std::cbrt(9.0 * mag / 16.0);
  wp.theta0 = std::atan2(-F.y, -F.x);
  return wp;
}

Vec2 WakeParameters::force() const {
  const double mag = 16.0 * a * a * a / 9.0;
  return {-mag * std::cos(theta0), -mag * std::sin(theta0)};
}

WakeProfiles wake_profiles(double a, double xbar2) {
  const Jet3 zeta(xbar2);
  WakeProfiles out;
  out.phi0 = phi0_j(a, zeta).v;
  out.phi1 = phi1_j(a, zeta).v;
  out.rho0 = rho0_j(a, zeta).v;
  out.rho1 = rho1_j(a, zeta).v;
  return out;
}

FlowJet eval_wake(const Vec2& F, const Point& x) {
  return eval_wake_impl(F, x, /*include_second=*/true);
}

FlowJet eval_wake_leading_only(const Vec2& F, const Point& x) {
  return eval_wake_impl(F, x, /*include_second=*/false);
}

double wake_slit_jump(const Vec2& F, double r, bool include_second) {
  const WakeParameters wp = WakeParameters::from_force(F);
  return 2.0 * slit_value(wp.a, Jet3(r), include_second).v;
}

double wake_leading_speed(const WakeParameters& wp, double r, double theta) {
  const double rp = std::cbrt(r);
  const double s = sech_d(wp.a * rp * std::sin((theta - wp.theta0) / 3.0));
  return (2.0 * wp.a * wp.a / (3.0 * rp)) * s * s;
}

std::vector<RayDecay> wake_residual_orders(const Vec2& F,
                                           const std::vector<double>& rays,
                                           double rmin, double rmax,
                                           int n_samples) {
  const WakeParameters wp = WakeParameters::from_force(F);
  const OperatorKind ns = OperatorKind::navier_stokes(1.0);

  std::vector<RayDecay> out;
  out.reserve(rays.size());
  const Vec2 fdir = F * (1.0 / F.norm());
  const Vec2 fperp{-fdir.y, fdir.x};
  for (double ray : rays) {
    const double th = wp.theta0 + ray;
    const Vec2 dir{std::cos(th), std::sin(th)};
    auto component = [&](const Vec2& axis) {
      return [&, axis](double r) {
        const Point x{r * dir.x, r * dir.y};
        const OperatorResult res = apply_operator(ns, eval_wake(F, x));
        return std::abs(res.f.dot(axis));
      };
    };
    RayDecay rd;
    rd.ray = ray;
    rd.parallel = fit_decay_along(component(fdir), rmin, rmax, n_samples);
    rd.perpendicular = fit_decay_along(component(fperp), rmin, rmax, n_samples);
    out.push_back(rd);
  }
  return out;
}

}  // namespace planeflow
