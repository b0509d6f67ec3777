#pragma once

#include <array>
#include <vector>

#include "planeflow/fields.hpp"
#include "planeflow/geometry.hpp"
#include "planeflow/residual.hpp"

namespace planeflow {

// The three quantities conserved across enclosing contours of a steady
// planar flow: net flux, net force, net torque.
struct InvariantTriple {
  double flux = 0.0;
  Vec2 force{};
  double torque = 0.0;
};

// Φ = ∮ u·n, F = ∮ T n, M = ∮ x∧(T n) on the circle of the given radius,
// with the stress tensor including the convective part,
// T = ∇u + (∇u)ᵀ − p·I − ν·u⊗u. Trapezoidal quadrature (spectrally
// accurate for smooth periodic integrands).
InvariantTriple contour_invariants(const FieldFn& field, double nu,
                                   double radius, int n_quad = 256);
InvariantTriple contour_invariants(const AnalyticField& field, double nu,
                                   double radius, int n_quad = 256);

// Least-squares extrapolation of contour forces F(Rᵢ) = F∞ + c·Rᵢ^{−q}
// measured at two or more radii (fixed decay rate q > 0).
Vec2 extrapolate_force(const std::vector<Vec2>& forces,
                       const std::vector<double>& radii, double q);

// Moments of a force field driving the far-field expansion: c0 = ∫f,
// c1 = ∫(x₁f₁−x₂f₂, x₁f₂+x₂f₁, x₁f₂−x₂f₁), and the four second moments
// c2 = ∫((x₁²−x₂²)f₁−2x₁x₂f₂, (x₂²−x₁²)f₂−2x₁x₂f₁,
//         2x₁x₂f₂−3x₂²f₁−x₁²f₁, 3x₁²f₂+x₂²f₂−2x₁x₂f₁).
struct MomentCoefficients {
  Vec2 c0{};
  std::array<double, 3> c1{};
  std::array<double, 4> c2{};

  std::array<double, 9> flat() const {
    return {c0.x, c0.y, c1[0], c1[1], c1[2], c2[0], c2[1], c2[2], c2[3]};
  }
};

// Polar Gauss-Legendre × midpoint quadrature over the support disk;
// linear in f. Requires f.support_radius > 0.
MomentCoefficients moment_coeffs(const ForceField& f,
                                 const QuadratureSpec& quadrature = {});

// Discrete symmetries of a force field:
//  (a) Central:         f(x) = −f(−x)
//  (b) AxisX2:          f₁ odd / f₂ even under x₁ ↦ −x₁
//  (c) RotatedAxis:     f₁(x₁,x₂) = f₂(x₂,x₁), f₂(x₁,x₂) = f₁(x₂,x₁)
//  (d) TwoAxes          = (a)∘(b)
//  (e) CentralRotated   = (a)∘(c)
//  (f) FourAxes         = (d)∘(e)
enum class SymmetryKind {
  Central,
  AxisX2,
  RotatedAxis,
  TwoAxes,
  CentralRotated,
  FourAxes,
};

// Group-average of f over the group generated by the symmetry; the result
// satisfies the corresponding pointwise predicate exactly and the operation
// is a projection (idempotent). Orthogonal maps preserve the support radius.
ForceField symmetrize(const ForceField& f, SymmetryKind kind);

// Which of the nine flattened moment coefficients are forced to vanish by
// the symmetry (true = must be zero; false = generically nonzero).
std::array<bool, 9> symmetry_zero_pattern(SymmetryKind kind);

struct SymmetryCheckRow {
  SymmetryKind kind{};
  std::array<bool, 9> entry_ok{};  // per-coefficient verdict
  bool passed = false;
};

// For each kind: symmetrize every ensemble member, compute its moment
// coefficients, and verify the zero pattern — entries forced to zero must
// vanish within tol for every member; generic entries must exceed 10·tol
// for at least 90% of the members.
std::vector<SymmetryCheckRow> symmetry_table_check(
    const std::vector<ForceField>& ensemble,
    const std::vector<SymmetryKind>& kinds,
    const QuadratureSpec& quadrature = {}, double tol = 1e-8);

}  // namespace planeflow
