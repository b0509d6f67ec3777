#pragma once

#include <functional>
#include <vector>

#include "planeflow/fields.hpp"
#include "planeflow/flowjet.hpp"
#include "planeflow/geometry.hpp"

namespace planeflow {

// --- operators ----------------------------------------------------------

struct OperatorKind {
  enum class Type { NavierStokes, Stokes, Euler };
  Type type = Type::NavierStokes;
  double nu = 1.0;

  static OperatorKind navier_stokes(double nu = 1.0) {
    return {Type::NavierStokes, nu};
  }
  static OperatorKind stokes() { return {Type::Stokes, 0.0}; }
  static OperatorKind euler() { return {Type::Euler, 0.0}; }
};

// Any point-evaluable flow field (analytic or interpolated grid solution).
using FieldFn = std::function<FlowJet(const Point&)>;

struct OperatorResult {
  Vec2 f{};
  double div = 0.0;
};

// f = Δu − ∇p − ν u·∇u (NS), Δu − ∇p (Stokes), −(u·∇u + ∇p) (Euler);
// the Laplacian uses the analytic Hessian when the jet carries one and
// fourth-order central differences of u otherwise.
OperatorResult apply_operator(const OperatorKind& op, const FieldFn& field,
                              const Point& x);
OperatorResult apply_operator(const OperatorKind& op,
                              const AnalyticField& field, const Point& x);
// Direct form for a jet that already carries the velocity Hessian.
OperatorResult apply_operator(const OperatorKind& op, const FlowJet& jet);

// --- decay fitting --------------------------------------------------------

struct DecayFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double rmin = 0.0, rmax = 0.0;
  double rms_log_residual = 0.0;
  int n_samples = 0;
};

// Least-squares line in (log r, log value); all values and radii must be
// positive and at least 8 samples are required.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples);

// Convenience: sample |g(r)| at n log-spaced radii in [rmin, rmax] and fit.
DecayFit fit_decay_along(const std::function<double(double)>& magnitude,
                         double rmin, double rmax, int n = 33);

// --- the Euler profile ODEs ------------------------------------------------

// The angular profile identity 2φφ″ + 2(φ′)² + φ² − A², evaluated on raw
// profile data (usable for perturbed or numerically obtained profiles).
double euler_ode_expression(double phi, double dphi, double ddphi, double amp);

// Residual of the identity for φ₀ = A√(1−λcos(θ−θ₀)), evaluated with
// analytic derivatives.
double euler_ode_residual(double amp, double lambda, double theta0,
                          double theta);

struct EulerCorrection {
  std::vector<double> theta;  // collocation nodes
  std::vector<double> phi1;   // solution values at the nodes
  double mean = 0.0;          // (1/2π)∫φ₁ — note: the printed target is ∫φ₁
  double integral = 0.0;      // ∫₀^{2π} φ₁
  double linear_residual = 0.0;  // collocation system residual norm
  double value(double th) const;  // trigonometric interpolation
};

// Fourier collocation solve of (4/3)(φ₀⁴φ₁′)′ + (φ₀+4φ₀″)φ₀³ φ₁ = R.
EulerCorrection solve_euler_correction(double amp, double lambda, double mu,
                                       int n_modes);

// --- Stokes convolution oracle ---------------------------------------------

struct ForceField {
  std::function<Vec2(const Point&)> f;
  double support_radius = 0.0;  // ≈ radius outside which f is negligible

  Vec2 operator()(const Point& x) const { return f(x); }
};

struct QuadratureSpec {
  int n_radial = 96;    // Gauss-Legendre panels/points in the radial direction
  int n_angular = 256;  // trapezoid points in the angular direction
};

// u = E∗f, ∇u = ∇E∗f, p = e∗f by adaptive quadrature; the returned jet has
// no Hessian (the oracle is only used through u, ∇u, p).
FlowJet stokes_convolution(const ForceField& f, const Point& x,
                           const QuadratureSpec& quad = {});

}  // namespace planeflow
