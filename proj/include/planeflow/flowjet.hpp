#pragma once

#include <array>

#include "planeflow/geometry.hpp"
#include "planeflow/jet.hpp"

namespace planeflow {

// Velocity/pressure jet at one point. grad_u(i,j) = ∂u_i/∂x_j.
// hess_u[i] stores the symmetric second derivatives (xx, xy, yy) of u_i;
// it is present whenever the field was evaluated analytically.
struct FlowJet {
  Vec2 u{};
  double p = 0.0;
  Mat2 grad_u{};
  Vec2 grad_p{};
  bool has_hessian = false;
  std::array<std::array<double, 3>, 2> hess_u{{{0, 0, 0}, {0, 0, 0}}};

  Vec2 laplacian_u() const {
    return {hess_u[0][0] + hess_u[0][2], hess_u[1][0] + hess_u[1][2]};
  }
  double divergence() const { return grad_u.trace(); }
  Vec2 convective() const { return grad_u * u; }  // (u·∇)u

  FlowJet operator+(const FlowJet& o) const {
    FlowJet r;
    r.u = u + o.u;
    r.p = p + o.p;
    r.grad_u = grad_u + o.grad_u;
    r.grad_p = grad_p + o.grad_p;
    r.has_hessian = has_hessian && o.has_hessian;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 3; ++k) r.hess_u[i][k] = hess_u[i][k] + o.hess_u[i][k];
    return r;
  }

  FlowJet operator*(double s) const {
    FlowJet r = *this;
    r.u = u * s;
    r.p = p * s;
    r.grad_u = grad_u * s;
    r.grad_p = grad_p * s;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 3; ++k) r.hess_u[i][k] = hess_u[i][k] * s;
    return r;
  }
};

// Assemble a FlowJet from Jet3 evaluations of the velocity components and
// the pressure (all as functions of Cartesian x1, x2).
inline FlowJet flowjet_from_jets(const Jet3& u1, const Jet3& u2, const Jet3& p) {
  FlowJet out;
  out.u = {u1.v, u2.v};
  out.p = p.v;
  out.grad_u = {u1.d[0], u1.d[1], u2.d[0], u2.d[1]};
  out.grad_p = {p.d[0], p.d[1]};
  out.has_hessian = true;
  out.hess_u[0] = {u1.dd[0], u1.dd[1], u1.dd[2]};
  out.hess_u[1] = {u2.dd[0], u2.dd[1], u2.dd[2]};
  return out;
}

// Assemble a FlowJet from a stream-function jet: u = ∇∧ψ = (-∂₂ψ, ∂₁ψ).
inline FlowJet flowjet_from_stream(const Jet3& psi, const Jet3& p) {
  FlowJet out;
  out.u = {-psi.d[1], psi.d[0]};
  out.p = p.v;
  // u1 = -ψ_y: ∇u1 = (-ψ_xy, -ψ_yy); u2 = ψ_x: ∇u2 = (ψ_xx, ψ_xy).
  out.grad_u = {-psi.dd[1], -psi.dd[2], psi.dd[0], psi.dd[1]};
  out.grad_p = {p.d[0], p.d[1]};
  out.has_hessian = true;
  // Second derivatives of u from third derivatives of ψ.
  out.hess_u[0] = {-psi.ddd[1], -psi.ddd[2], -psi.ddd[3]};
  out.hess_u[1] = {psi.ddd[0], psi.ddd[1], psi.ddd[2]};
  return out;
}

}  // namespace planeflow
