#pragma once

#include <vector>

#include "planeflow/flowjet.hpp"
#include "planeflow/geometry.hpp"
#include "planeflow/residual.hpp"

namespace planeflow {

// Conformal coordinates x̄ = (r^p cos(pθ), r^p sin(pθ)) on the slit plane.
struct ConformalCoords {
  double xbar1 = 0.0;
  double xbar2 = 0.0;
  double p = 1.0 / 3.0;
};

ConformalCoords to_conformal(const Point& x, double p = 1.0 / 3.0);
Point from_conformal(const ConformalCoords& c);

// Wake parameterization: a = (9|F|/16)^{1/3}, θ₀ = arg(−F₁ − i F₂).
struct WakeParameters {
  Vec2 F{};
  double a = 0.0;
  double theta0 = 0.0;

  static WakeParameters from_force(const Vec2& F);
  Vec2 force() const;  // rebuilt from (a, θ₀)
};

struct WakeProfiles {
  double phi0 = 0.0, rho0 = 0.0, phi1 = 0.0, rho1 = 0.0;
};

// The four closed-form profile functions of the wake ansatz.
WakeProfiles wake_profiles(double a, double xbar2);

// Composite approximate solution (U_F, P_F) for net force F ≠ 0, evaluated
// with analytic derivatives through the conformal map.
FlowJet eval_wake(const Vec2& F, const Point& x);

// Truncated ansatz (ψ₀ only). The second-order profile pair does not change
// the residual orders; its role is to cancel the O(r^{1/3}) stream-function
// jump across the slit, which the truncated ansatz still carries.
FlowJet eval_wake_leading_only(const Vec2& F, const Point& x);

// Raw stream-function mismatch across the slit (before the angular blend
// that glues the field): 2ψ(r, π⁻) in the wake frame.
double wake_slit_jump(const Vec2& F, double r, bool include_second = true);

// Leading far-field speed |U_F| of the wake solution at (r, θ).
double wake_leading_speed(const WakeParameters& wp, double r, double theta);

struct RayDecay {
  double ray = 0.0;          // angle relative to θ₀
  DecayFit parallel;         // residual component parallel to F
  DecayFit perpendicular;    // residual component perpendicular to F
};

// NS residual f = Δu − ∇p − u·∇u along rays (angles measured from θ₀),
// decomposed parallel/perpendicular to the net force F and fitted over
// [rmin, rmax]; expected orders r^{-7/3} and r^{-8/3} respectively.
std::vector<RayDecay> wake_residual_orders(const Vec2& F,
                                           const std::vector<double>& rays,
                                           double rmin = 1e2, double rmax = 1e4,
                                           int n_samples = 25);

}  // namespace planeflow
