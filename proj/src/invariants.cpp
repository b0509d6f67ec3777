#include "planeflow/invariants.hpp"

#include <cmath>
#include <stdexcept>

#include "quadrature.h"

namespace planeflow {

namespace {

constexpr double kPi = M_PI;

Mat2 stress_tensor(const FlowJet& jet, double nu) {
  Mat2 t = jet.grad_u + jet.grad_u.transpose();
  t.a11 -= jet.p;
  t.a22 -= jet.p;
  return t - Mat2::outer(jet.u, jet.u) * nu;
}

}  // namespace

InvariantTriple contour_invariants(const FieldFn& field, double nu,
                                   double radius, int n_quad) {
  if (!(radius > 0.0))
    throw std::invalid_argument("contour_invariants: radius must be positive");
  if (n_quad < 64)
    throw std::invalid_argument("contour_invariants: n_quad must be >= 64");

  InvariantTriple out;
  const double ds = 2.0 * kPi * radius / n_quad;
  for (int k = 0; k < n_quad; ++k) {
    const double th = 2.0 * kPi * k / n_quad;
    const Vec2 n = e_r(th);
    const Point x{radius * n.x, radius * n.y};
    const FlowJet jet = field(x);
    const Vec2 tn = stress_tensor(jet, nu) * n;
    out.flux += jet.u.dot(n) * ds;
    out.force += tn * ds;
    out.torque += x.vec().wedge(tn) * ds;
  }
  return out;
}

InvariantTriple contour_invariants(const AnalyticField& field, double nu,
                                   double radius, int n_quad) {
  return contour_invariants(
      [&field](const Point& x) { return field.eval(x); }, nu, radius, n_quad);
}

Vec2 extrapolate_force(const std::vector<Vec2>& forces,
                       const std::vector<double>& radii, double q) {
  if (forces.size() != radii.size() || forces.size() < 2)
    throw std::invalid_argument(
        "extrapolate_force: need matching forces/radii, at least two");
  // Component-wise linear least squares for F(R) = F∞ + c·R^{−q}:
  // normal equations in the basis {1, R^{−q}}.
  double s00 = 0, s01 = 0, s11 = 0;
  Vec2 b0{}, b1{};
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double w = std::pow(radii[i], -q);
    s00 += 1.0;
    s01 += w;
    s11 += w * w;
    b0 += forces[i];
    b1 += forces[i] * w;
  }
  const double det = s00 * s11 - s01 * s01;
  if (std::abs(det) < 1e-14 * s00 * s11)
    throw std::invalid_argument("extrapolate_force: degenerate radii");
  return (b0 * s11 - b1 * s01) / det;
}

MomentCoefficients moment_coeffs(const ForceField& f,
                                 const QuadratureSpec& quadrature) {
  const double rs = f.support_radius;
  if (!(rs > 0.0))
    throw std::invalid_argument("moment_coeffs: support radius required");

  MomentCoefficients m;
  const int n_panels = std::max(1, quadrature.n_radial / quad::kGL);
  const double dphi = 2.0 * kPi / quadrature.n_angular;
  for (int pn = 0; pn < n_panels; ++pn) {
    quad::gl_panel(rs * pn / n_panels, rs * (pn + 1) / n_panels,
                   [&](double rho, double wr) {
                     for (int a = 0; a < quadrature.n_angular; ++a) {
                       const double phi = dphi * (a + 0.5);
                       const Point x{rho * std::cos(phi),
                                     rho * std::sin(phi)};
                       const Vec2 fv = f(x);
                       const double w = wr * rho * dphi;
                       const double x1 = x.x1, x2 = x.x2;
                       m.c0 += fv * w;
                       m.c1[0] += (x1 * fv.x - x2 * fv.y) * w;
                       m.c1[1] += (x1 * fv.y + x2 * fv.x) * w;
                       m.c1[2] += (x1 * fv.y - x2 * fv.x) * w;
                       m.c2[0] +=
                           ((x1 * x1 - x2 * x2) * fv.x - 2 * x1 * x2 * fv.y) *
                           w;
                       m.c2[1] +=
                           ((x2 * x2 - x1 * x1) * fv.y - 2 * x1 * x2 * fv.x) *
                           w;
                       m.c2[2] += (2 * x1 * x2 * fv.y - 3 * x2 * x2 * fv.x -
                                   x1 * x1 * fv.x) *
                                  w;
                       m.c2[3] += (3 * x1 * x1 * fv.y + x2 * x2 * fv.y -
                                   2 * x1 * x2 * fv.x) *
                                  w;
                     }
                   });
  }
  return m;
}

namespace {

// Group elements act equivariantly: (g·f)(x) = M f(Mᵀ x) with M orthogonal.
// Generators: A = −I (point reflection with sign flip), B = diag(−1, 1)
// (reflection about the x₂-axis), C = [[0,1],[1,0]] (reflection about the
// diagonal). A = (BC)², so all six groups live inside the dihedral group
// generated by B and C.
const Mat2 kA{-1.0, 0.0, 0.0, -1.0};
const Mat2 kB{-1.0, 0.0, 0.0, 1.0};
const Mat2 kC{0.0, 1.0, 1.0, 0.0};

std::vector<Mat2> symmetry_group(SymmetryKind kind) {
  const Mat2 id = Mat2::identity();
  switch (kind) {
    case SymmetryKind::Central:
      return {id, kA};
    case SymmetryKind::AxisX2:
      return {id, kB};
    case SymmetryKind::RotatedAxis:
      return {id, kC};
    case SymmetryKind::TwoAxes:
      return {id, kA, kB, kA * kB};
    case SymmetryKind::CentralRotated:
      return {id, kA, kC, kA * kC};
    case SymmetryKind::FourAxes:
      return {id,      kA,      kB,      kC,
              kA * kB, kA * kC, kB * kC, kA * kB * kC};
  }
  throw std::logic_error("unknown symmetry kind");
}

}  // namespace

ForceField symmetrize(const ForceField& f, SymmetryKind kind) {
  const std::vector<Mat2> group = symmetry_group(kind);
  const double scale = 1.0 / static_cast<double>(group.size());
  auto base = f.f;
  ForceField out;
  out.support_radius = f.support_radius;
  out.f = [base, group, scale](const Point& x) {
    Vec2 acc{};
    for (const Mat2& m : group) {
      const Vec2 xv = m.transpose() * x.vec();
      acc += m * base(Point{xv.x, xv.y});
    }
    return acc * scale;
  };
  return out;
}

std::array<bool, 9> symmetry_zero_pattern(SymmetryKind kind) {
  // Flattened order (c0₁ c0₂ | c1₁ c1₂ c1₃ | c2₁ c2₂ c2₃ c2₄);
  // true = forced zero. Note: under (b) the first component of c0 vanishes
  // (f₁ is odd in x₁), a row entry the source table lists as generic.
  switch (kind) {
    case SymmetryKind::Central:
      return {true, true, false, false, false, true, true, true, true};
    case SymmetryKind::AxisX2:
      return {true, false, false, true, true, true, false, true, false};
    case SymmetryKind::RotatedAxis:
      return {false, false, true, false, true, false, false, false, false};
    case SymmetryKind::TwoAxes:
      return {true, true, false, true, true, true, true, true, true};
    case SymmetryKind::CentralRotated:
      return {true, true, true, false, true, true, true, true, true};
    case SymmetryKind::FourAxes:
      return {true, true, true, true, true, true, true, true, true};
  }
  throw std::logic_error("unknown symmetry kind");
}

std::vector<SymmetryCheckRow> symmetry_table_check(
    const std::vector<ForceField>& ensemble,
    const std::vector<SymmetryKind>& kinds, const QuadratureSpec& quadrature,
    double tol) {
  if (ensemble.size() < 20)
    throw std::invalid_argument(
        "symmetry_table_check: ensemble of at least 20 members required");

  std::vector<SymmetryCheckRow> rows;
  for (SymmetryKind kind : kinds) {
    const std::array<bool, 9> zero = symmetry_zero_pattern(kind);
    std::array<int, 9> n_generic{};
    std::array<double, 9> max_abs{};
    for (const ForceField& f : ensemble) {
      const std::array<double, 9> c =
          moment_coeffs(symmetrize(f, kind), quadrature).flat();
      for (int i = 0; i < 9; ++i) {
        max_abs[i] = std::max(max_abs[i], std::abs(c[i]));
        if (std::abs(c[i]) > 10.0 * tol) ++n_generic[i];
      }
    }
    SymmetryCheckRow row;
    row.kind = kind;
    row.passed = true;
    const int needed = static_cast<int>(0.9 * ensemble.size());
    for (int i = 0; i < 9; ++i) {
      row.entry_ok[i] =
          zero[i] ? (max_abs[i] <= tol) : (n_generic[i] >= needed);
      row.passed = row.passed && row.entry_ok[i];
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace planeflow
