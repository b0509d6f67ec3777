#include "planeflow/residual.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "quadrature.h"

namespace planeflow {

namespace {

constexpr double kPi = M_PI;
using quad::gl_panel;
using quad::kGL;

Vec2 momentum_residual(const OperatorKind& op, const FlowJet& jet,
                       const Vec2& lap) {
  switch (op.type) {
    case OperatorKind::Type::NavierStokes:
      return lap - jet.grad_p - jet.convective() * op.nu;
    case OperatorKind::Type::Stokes:
      return lap - jet.grad_p;
    case OperatorKind::Type::Euler:
      return (jet.convective() + jet.grad_p) * -1.0;
  }
  throw std::logic_error("unknown operator type");
}

}  // namespace

OperatorResult apply_operator(const OperatorKind& op, const FlowJet& jet) {
  if (!jet.has_hessian)
    throw std::invalid_argument(
        "apply_operator(FlowJet): jet carries no velocity Hessian");
  return {momentum_residual(op, jet, jet.laplacian_u()), jet.divergence()};
}

OperatorResult apply_operator(const OperatorKind& op, const FieldFn& field,
                              const Point& x) {
  const FlowJet jet = field(x);
  Vec2 lap;
  if (jet.has_hessian) {
    lap = jet.laplacian_u();
  } else {
    // Fourth-order central differences of the velocity.
    const double h = std::max(1e-4, 1e-4 * x.r());
    Vec2 acc{};
    const double stencil[4] = {-2.0, -1.0, 1.0, 2.0};
    const double coeff[4] = {-1.0, 16.0, 16.0, -1.0};
    for (int dim = 0; dim < 2; ++dim) {
      for (int s = 0; s < 4; ++s) {
        Point xs = x;
        (dim == 0 ? xs.x1 : xs.x2) += stencil[s] * h;
        acc = acc + field(xs).u * coeff[s];
      }
      acc = acc + jet.u * -30.0;
    }
    lap = acc * (1.0 / (12.0 * h * h));
  }
  return {momentum_residual(op, jet, lap), jet.divergence()};
}

OperatorResult apply_operator(const OperatorKind& op,
                              const AnalyticField& field, const Point& x) {
  field.check_domain(x);
  return apply_operator(op, field.eval(x));
}

// --- decay fitting -----------------------------------------------------

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 8)
    throw std::invalid_argument("fit_decay: need at least 8 samples");
  const int n = static_cast<int>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double rmin = samples.front().first, rmax = samples.front().first;
  for (const auto& [r, v] : samples) {
    if (!(r > 0.0) || !(v > 0.0))
      throw std::invalid_argument("fit_decay: radii and values must be positive");
    const double lx = std::log(r), ly = std::log(v);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  const double det = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (const auto& [r, v] : samples) {
    const double e = std::log(v) - (intercept + slope * std::log(r));
    ss += e * e;
  }
  DecayFit fit;
  fit.exponent = slope;
  fit.prefactor = std::exp(intercept);
  fit.rmin = rmin;
  fit.rmax = rmax;
  fit.rms_log_residual = std::sqrt(ss / n);
  fit.n_samples = n;
  return fit;
}

DecayFit fit_decay_along(const std::function<double(double)>& magnitude,
                         double rmin, double rmax, int n) {
  if (!(rmax > rmin) || rmin <= 0.0)
    throw std::invalid_argument("fit_decay_along: need 0 < rmin < rmax");
  std::vector<std::pair<double, double>> samples;
  samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    const double r = rmin * std::pow(rmax / rmin, t);
    samples.emplace_back(r, magnitude(r));
  }
  return fit_decay(samples);
}

// --- the Euler profile ODEs ----------------------------------------------

double euler_ode_expression(double phi, double dphi, double ddphi,
                            double amp) {
  return 2.0 * phi * ddphi + 2.0 * dphi * dphi + phi * phi - amp * amp;
}

double euler_ode_residual(double amp, double lambda, double theta0,
                          double theta) {
  const Jet3 th = Jet3::variable(theta, 0);
  const Jet3 phi = amp * sqrt(1.0 - lambda * cos(th - theta0));
  return euler_ode_expression(phi.v, phi.d[0], phi.dd[0], amp);
}

namespace {

// Spectral differentiation matrix on an even periodic grid of N points.
Eigen::MatrixXd fourier_diff(int N) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) {
      if (j == k) continue;
      const double arg = kPi * (j - k) / N;
      D(j, k) = 0.5 * ((j - k) % 2 == 0 ? 1.0 : -1.0) / std::tan(arg);
    }
  return D;
}

}  // namespace

double EulerCorrection::value(double th) const {
  // Barycentric trigonometric interpolation on the even periodic grid.
  const int N = static_cast<int>(theta.size());
  double num = 0.0, den = 0.0;
  for (int k = 0; k < N; ++k) {
    const double d = 0.5 * (th - theta[k]);
    const double sd = std::sin(d);
    if (std::abs(sd) < 1e-14) return phi1[k];
    const double w = ((k % 2 == 0) ? 1.0 : -1.0) / std::tan(d);
    num += w * phi1[k];
    den += w;
  }
  return num / den;
}

EulerCorrection solve_euler_correction(double amp, double lambda, double mu,
                                       int n_modes) {
  if (std::abs(lambda) >= 1.0)
    throw std::invalid_argument("solve_euler_correction: need |lambda| < 1");
  const int N = 2 * std::max(n_modes, 8);
  Eigen::VectorXd th(N), p0(N);
  for (int k = 0; k < N; ++k) th(k) = 2.0 * kPi * k / N;
  for (int k = 0; k < N; ++k)
    p0(k) = amp * std::sqrt(1.0 - lambda * std::cos(th(k)));

  const Eigen::MatrixXd D = fourier_diff(N);
  const Eigen::VectorXd p1 = D * p0;
  const Eigen::VectorXd p2 = D * p1;
  const Eigen::VectorXd p3 = D * p2;
  const Eigen::VectorXd p4 = D * p3;

  // (4/3)(φ₀⁴ φ₁′)′ + (φ₀ + 4φ₀″)φ₀³ φ₁ = R.
  const Eigen::VectorXd p0_3 = p0.array().cube();
  const Eigen::VectorXd p0_4 = p0_3.array() * p0.array();
  Eigen::MatrixXd L = (4.0 / 3.0) * D * p0_4.asDiagonal() * D;
  L += ((p0 + 4.0 * p2).array() * p0_3.array()).matrix().asDiagonal();

  const Eigen::VectorXd R =
      (p0_3.array() / 6.0) *
      (16.0 * p4.array() - 16.0 * mu * p3.array() + 40.0 * p2.array() -
       4.0 * mu * p1.array() + 9.0 * p0.array());

  const Eigen::VectorXd sol = L.fullPivLu().solve(R);

  EulerCorrection out;
  out.theta.assign(th.data(), th.data() + N);
  out.phi1.assign(sol.data(), sol.data() + N);
  out.mean = sol.mean();
  out.integral = 2.0 * kPi * out.mean;
  out.linear_residual = (L * sol - R).norm() / std::max(R.norm(), 1e-300);
  return out;
}

// --- Stokes convolution oracle ---------------------------------------------

namespace {

// Kernel contribution at offset z = x − y: velocity E(z)·f, gradient
// ∂ₖE(z)·f, pressure e(z)·f.
void kernel_accumulate(const Vec2& z, const Vec2& fv, double w, Vec2& u,
                       Mat2& grad_u, double& p) {
  const double r2 = z.norm2();
  if (r2 <= 0.0) return;  // measure-zero singular node
  const double lr = 0.5 * std::log(r2);
  const double c = 1.0 / (4.0 * kPi);
  // u_i += (1/4π)(log r f_i − z_i (z·f)/r²)
  const double zf = z.dot(fv);
  u.x += w * c * (lr * fv.x - z.x * zf / r2);
  u.y += w * c * (lr * fv.y - z.y * zf / r2);
  // ∂ₖ(E f)_i = (1/4π)[ z_k f_i/r² − (δ_ik (z·f) + f_k z_i)/r²·… ]
  for (int i = 0; i < 2; ++i) {
    const double zi = (i == 0) ? z.x : z.y;
    const double fi = (i == 0) ? fv.x : fv.y;
    for (int k = 0; k < 2; ++k) {
      const double zk = (k == 0) ? z.x : z.y;
      const double fk = (k == 0) ? fv.x : fv.y;
      const double term = zk * fi / r2 - (((i == k) ? zf : 0.0) + fk * zi) / r2 +
                          2.0 * zi * zf * zk / (r2 * r2);
      grad_u(i, k) += w * c * term;
    }
  }
  p += -w * zf / (2.0 * kPi * r2);
}

}  // namespace

FlowJet stokes_convolution(const ForceField& f, const Point& x,
                           const QuadratureSpec& quad) {
  const double Rs = f.support_radius;
  if (!(Rs > 0.0))
    throw std::invalid_argument("stokes_convolution: support radius required");

  Vec2 u{};
  Mat2 grad_u{};
  double p = 0.0;
  const double dphi = 2.0 * kPi / quad.n_angular;

  if (x.r() > 1.2 * Rs) {
    // The kernel singularity lies outside the support of f, so the integrand
    // is smooth there: integrate over the support disk in polar coordinates
    // centered at the source with uniform radial panels.
    const int n_panels = std::max(1, quad.n_radial / kGL);
    for (int pn = 0; pn < n_panels; ++pn) {
      gl_panel(Rs * pn / n_panels, Rs * (pn + 1) / n_panels,
               [&](double rho, double wr) {
                 for (int a = 0; a < quad.n_angular; ++a) {
                   const double phi = dphi * (a + 0.5);
                   const Point y{rho * std::cos(phi), rho * std::sin(phi)};
                   const Vec2 offset{x.x1 - y.x1, x.x2 - y.x2};
                   kernel_accumulate(offset, f(y), wr * rho * dphi, u, grad_u,
                                     p);
                 }
               });
    }
    FlowJet out;
    out.u = u;
    out.p = p;
    out.grad_u = grad_u;
    out.has_hessian = false;
    return out;
  }

  // Polar quadrature centered at x (the kernel singularity), extending far
  // enough to cover the support of f; radial panels graded toward 0.
  const double Rmax = x.r() + Rs;
  const int n_panels = std::max(1, quad.n_radial / kGL);
  std::vector<double> edges{0.0};
  double edge = Rmax;
  std::vector<double> rev;
  for (int i = 0; i < n_panels - 1; ++i) {
    rev.push_back(edge);
    edge *= 0.25;
  }
  rev.push_back(edge);
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) edges.push_back(*it);

  for (std::size_t pn = 0; pn + 1 < edges.size(); ++pn) {
    gl_panel(edges[pn], edges[pn + 1], [&](double rho, double wr) {
      for (int a = 0; a < quad.n_angular; ++a) {
        const double phi = dphi * (a + 0.5);
        const Vec2 offset{rho * std::cos(phi), rho * std::sin(phi)};
        const Point y{x.x1 - offset.x, x.x2 - offset.y};
        if (y.r() > Rs) continue;  // outside the support of f
        const Vec2 fv = f(y);
        kernel_accumulate(offset, fv, wr * rho * dphi, u, grad_u, p);
      }
    });
  }

  FlowJet out;
  out.u = u;
  out.p = p;
  out.grad_u = grad_u;
  out.has_hessian = false;
  return out;
}

}  // namespace planeflow
