#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "planeflow/flowjet.hpp"
#include "planeflow/geometry.hpp"
#include "planeflow/residual.hpp"

namespace planeflow {

// Annulus r ∈ [r_inner, r_outer], logarithmic radial spacing (uniform in
// s = log r), periodic uniform angular spacing.
struct AnnularGrid {
  double r_inner = 1.0;
  double r_outer = 1e3;
  int n_r = 192;
  int n_theta = 384;

  double s_inner() const { return std::log(r_inner); }
  double s_outer() const { return std::log(r_outer); }
  double hs() const { return (s_outer() - s_inner()) / (n_r - 1); }
  double ht() const { return 2.0 * M_PI / n_theta; }
  double s(int i) const { return s_inner() + i * hs(); }
  double r(int i) const { return std::exp(s(i)); }
  double theta(int j) const { return j * ht(); }
  int idx(int i, int j) const { return i * n_theta + j; }
  int n_nodes() const { return n_r * n_theta; }

  void validate() const;  // throws std::invalid_argument on bad parameters
};

enum class InnerBCKind {
  Velocity,  // ψ and ∂ψ/∂r prescribed from the boundary velocity
  Natural,   // zero flux (ψ = 0) + linear radial extrapolation of ω
};
enum class OuterBCKind {
  Open,       // zero second radial derivative of ψ and ω in s = log r
  Dirichlet,  // ψ = ω = 0 (sensitivity variant)
};

// Inner boundary data: the closed-form boundary velocity
// u* = −(1/4π)[c0·(cosθ, sinθ) e_r + c1·(cos2θ e_r, sin2θ e_r, e_θ)],
// with the conventions 𝓕 via c0 = (−𝓕, 0), 𝓜 via c1 = (0, 0, −𝓜),
// 𝓐 via c1 = (−𝓐, 0, −𝓜). u* has zero net flux through the circle.
struct BoundaryConditionSpec {
  Vec2 c0{};
  std::array<double, 3> c1{};
  // Coefficient of the multivalued stream part ψ_total = ψ + c_theta·θ
  // (zero for all body/forcing runs; used for exact-solution injection).
  double c_theta = 0.0;
  InnerBCKind inner = InnerBCKind::Velocity;
  OuterBCKind outer = OuterBCKind::Open;

  // Optional manufactured-solution override of the inner Dirichlet data;
  // when set these replace the closed-form values derived from (c0, c1).
  std::function<double(double)> psi_inner;     // θ ↦ ψ(r_inner, θ)
  std::function<double(double)> dpsidr_inner;  // θ ↦ ∂ψ/∂r(r_inner, θ)
  // Optional outer Dirichlet override (manufactured solutions whose far
  // field is not captured by either outer kind); when set, the outer rows
  // prescribe ψ and ω directly.
  std::function<double(double)> psi_outer;   // θ ↦ ψ(r_outer, θ)
  std::function<double(double)> omega_outer; // θ ↦ ω(r_outer, θ)

  Vec2 u_star(double theta) const;           // boundary velocity (Cartesian)
  double psi_star(double r, double theta) const;
  double dpsidr_star(double theta) const;
};

// Body force with an analytic curl (the vorticity equation needs ∇∧f).
struct SolverForcing {
  ForceField f;
  std::function<double(const Point&)> curl;
  bool empty() const { return !static_cast<bool>(curl); }
};

// f(x) = −A Σ_{i<n} δ_ε(x − 5 R_{2πi/n} e₁) R_{2πi/n} e₁ with the Gaussian
// approximation δ_ε(x) = e^{−|x|²/ε}/(πε).
ForceField delta_forcing(int n, double amplitude, double eps);
SolverForcing delta_forcing_with_curl(int n, double amplitude, double eps);

enum class SolveStatus { Converged, Diverged, LinearSolveFailed };
const char* to_string(SolveStatus s);

struct NewtonOptions {
  double tol = 1e-10;    // relative to the initial residual norm
  int max_iter = 30;
  int max_halvings = 8;  // backtracking with factor 1/2
};

struct GridSolution {
  AnnularGrid grid;
  BoundaryConditionSpec bc;
  std::vector<double> psi, omega;  // nodal, row-major [i·n_theta + j]
  SolveStatus status = SolveStatus::Diverged;
  int newton_iterations = 0;
  double residual_norm = 0.0;

  // Nodal derived fields, filled by recover_fields(): polar velocity
  // components and the pressure recovered by line integration of the
  // momentum equation (exact up to a constant).
  std::vector<double> u_r, u_t, p;
  void recover_fields(const SolverForcing* forcing = nullptr);

  // Point evaluation by cubic interpolation in (log r, θ); the jet carries
  // u, ∇u, p, ∇p (no Hessian). Requires recover_fields().
  FlowJet eval(const Point& x) const;
  FieldFn field() const;

  void write_csv(const std::string& path) const;  // r, θ, u1, u2, p
  void save(const std::string& path) const;       // binary dump
  static GridSolution load(const std::string& path);
};

// Second-order central discretization of the ψ–ω system on the log-polar
// grid (vorticity transport + stream Poisson equation), with the boundary
// rows described by bc. State layout: x[2·idx] = ψ, x[2·idx+1] = ω.
// The Jacobian is exact for the discrete residual (hand-differentiated
// stencils); pass jacobian = nullptr to assemble the residual only.
void assemble_system(const AnnularGrid& grid, const BoundaryConditionSpec& bc,
                     const SolverForcing* forcing,
                     const Eigen::VectorXd& state, Eigen::VectorXd& residual,
                     Eigen::SparseMatrix<double>* jacobian);

// Damped Newton with backtracking on the residual 2-norm; failure is an
// explicit status on the returned (last-iterate) solution, not an exception.
GridSolution newton_solve(const AnnularGrid& grid,
                          const BoundaryConditionSpec& bc,
                          const SolverForcing* forcing = nullptr,
                          const GridSolution* seed = nullptr,
                          const NewtonOptions& opts = {});

struct ContinuationPlan {
  // Rectangular parameter grid; solves run along the minor axis with warm
  // starts from the nearest converged neighbor, line by line.
  std::vector<double> param1;
  std::vector<double> param2;
  enum class Order { Param1Minor, Param2Minor } order = Order::Param2Minor;
  std::function<BoundaryConditionSpec(double, double)> make_bc;
  std::function<SolverForcing(double, double)> make_forcing;  // optional
};

struct SweepPoint {
  double p1 = 0.0, p2 = 0.0;
  SolveStatus status = SolveStatus::Diverged;
  GridSolution solution;
};

std::vector<SweepPoint> continuation_sweep(const ContinuationPlan& plan,
                                           const AnnularGrid& grid,
                                           const NewtonOptions& opts = {});

}  // namespace planeflow
