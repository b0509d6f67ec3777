#include "planeflow/solver.hpp"

#include <Eigen/SparseLU>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace planeflow {

namespace {

constexpr double kPi = M_PI;

}  // namespace

void AnnularGrid::validate() const {
  if (!(r_inner > 0.0) || !(r_outer > r_inner))
    throw std::invalid_argument("AnnularGrid: need 0 < r_inner < r_outer");
  if (n_r < 4 || n_theta < 8)
    throw std::invalid_argument("AnnularGrid: grid too small");
  if (n_theta % 2 != 0)
    throw std::invalid_argument("AnnularGrid: n_theta must be even");
}

// --- boundary data ---------------------------------------------------------

Vec2 BoundaryConditionSpec::u_star(double theta) const {
  const double ur = -(c0.x * std::cos(theta) + c0.y * std::sin(theta) +
                      c1[0] * std::cos(2 * theta) +
                      c1[1] * std::sin(2 * theta)) /
                    (4.0 * kPi);
  const double ut = -c1[2] / (4.0 * kPi);
  return e_r(theta) * ur + e_theta(theta) * ut;
}

double BoundaryConditionSpec::psi_star(double r, double theta) const {
  // ∂ψ/∂θ = −r·u_r integrated in θ (zero-mean, so ψ is single-valued).
  return r / (4.0 * kPi) *
         (c0.x * std::sin(theta) - c0.y * std::cos(theta) +
          0.5 * c1[0] * std::sin(2 * theta) -
          0.5 * c1[1] * std::cos(2 * theta));
}

double BoundaryConditionSpec::dpsidr_star(double) const {
  return -c1[2] / (4.0 * kPi);  // = u_θ on the circle
}

// --- delta forcing ----------------------------------------------------------

ForceField delta_forcing(int n, double amplitude, double eps) {
  if (n < 1) throw std::invalid_argument("delta_forcing: n >= 1 required");
  if (!(eps > 0.0)) throw std::invalid_argument("delta_forcing: eps > 0");
  struct Site {
    Point c;
    Vec2 d;
  };
  std::vector<Site> sites;
  for (int i = 0; i < n; ++i) {
    const double phi = 2.0 * kPi * i / n;
    const Vec2 d = e_r(phi);
    sites.push_back({Point{5.0 * d.x, 5.0 * d.y}, d});
  }
  ForceField out;
  out.support_radius = 5.0 + 8.0 * std::sqrt(eps);
  out.f = [sites, amplitude, eps](const Point& x) {
    Vec2 acc{};
    for (const Site& s : sites) {
      const double dx = x.x1 - s.c.x1, dy = x.x2 - s.c.x2;
      const double g = std::exp(-(dx * dx + dy * dy) / eps) / (kPi * eps);
      acc -= s.d * (amplitude * g);
    }
    return acc;
  };
  return out;
}

SolverForcing delta_forcing_with_curl(int n, double amplitude, double eps) {
  SolverForcing out;
  out.f = delta_forcing(n, amplitude, eps);
  std::vector<std::pair<Point, Vec2>> sites;
  for (int i = 0; i < n; ++i) {
    const double phi = 2.0 * kPi * i / n;
    const Vec2 d = e_r(phi);
    sites.push_back({Point{5.0 * d.x, 5.0 * d.y}, d});
  }
  out.curl = [sites, amplitude, eps](const Point& x) {
    // ∇∧(g·d) = ∂₁g·d₂ − ∂₂g·d₁ with ∇g = −(2/ε)(x − c)·g.
    double acc = 0.0;
    for (const auto& [c, d] : sites) {
      const double dx = x.x1 - c.x1, dy = x.x2 - c.x2;
      const double g = std::exp(-(dx * dx + dy * dy) / eps) / (kPi * eps);
      acc -= amplitude * (-2.0 / eps) * (dx * d.y - dy * d.x) * g;
    }
    return acc;
  };
  return out;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::Diverged:
      return "diverged";
    case SolveStatus::LinearSolveFailed:
      return "linear-solve-failed";
  }
  return "unknown";
}

// --- discrete system ---------------------------------------------------------

void assemble_system(const AnnularGrid& grid, const BoundaryConditionSpec& bc,
                     const SolverForcing* forcing,
                     const Eigen::VectorXd& state, Eigen::VectorXd& residual,
                     Eigen::SparseMatrix<double>* jacobian) {
  grid.validate();
  const int nr = grid.n_r, nt = grid.n_theta;
  const int n_unknowns = 2 * nr * nt;
  if (state.size() != n_unknowns)
    throw std::invalid_argument("assemble_system: state dimension mismatch");

  const double hs = grid.hs(), ht = grid.ht();
  const double ihs2 = 1.0 / (hs * hs), iht2 = 1.0 / (ht * ht);
  const double i2hs = 1.0 / (2.0 * hs), i2ht = 1.0 / (2.0 * ht);

  auto P = [&](int i, int j) { return 2 * grid.idx(i, j); };
  auto W = [&](int i, int j) { return 2 * grid.idx(i, j) + 1; };

  residual.resize(n_unknowns);
  std::vector<Eigen::Triplet<double>> trip;
  if (jacobian) trip.reserve(static_cast<std::size_t>(n_unknowns) * 7);
  auto add = [&](int row, int col, double v) {
    if (jacobian) trip.emplace_back(row, col, v);
  };

  for (int i = 0; i < nr; ++i) {
    const double r = grid.r(i);
    const double e2s = r * r;
    for (int j = 0; j < nt; ++j) {
      const int jp = (j + 1) % nt, jm = (j + nt - 1) % nt;
      const double th = grid.theta(j);

      if (i == 0) {
        // Inner boundary rows.
        if (bc.inner == InnerBCKind::Velocity) {
          const double psi_d = bc.psi_inner ? bc.psi_inner(th)
                                            : bc.psi_star(grid.r_inner, th);
          const double dpsidr =
              bc.dpsidr_inner ? bc.dpsidr_inner(th) : bc.dpsidr_star(th);
          residual[P(i, j)] = state[P(0, j)] - psi_d;
          add(P(i, j), P(0, j), 1.0);
          // Second wall condition: the prescribed radial slope,
          // ∂ψ/∂s = r·∂ψ/∂r, with a one-sided second-order stencil. Unlike
          // a wall-vorticity (Thom/Jensen) row this carries no 1/h
          // amplification of interior ψ errors; the wall ω is pinned
          // through the interior transport rows and the outer ω row.
          const double b = grid.r_inner * dpsidr;
          residual[W(i, j)] =
              (-3.0 * state[P(0, j)] + 4.0 * state[P(1, j)] -
               state[P(2, j)]) *
                  i2hs -
              b;
          add(W(i, j), P(0, j), -3.0 * i2hs);
          add(W(i, j), P(1, j), 4.0 * i2hs);
          add(W(i, j), P(2, j), -i2hs);
        } else {  // Natural: zero flux + linear extrapolation of ω
          residual[P(i, j)] = state[P(0, j)];
          add(P(i, j), P(0, j), 1.0);
          residual[W(i, j)] =
              state[W(0, j)] - 2.0 * state[W(1, j)] + state[W(2, j)];
          add(W(i, j), W(0, j), 1.0);
          add(W(i, j), W(1, j), -2.0);
          add(W(i, j), W(2, j), 1.0);
        }
        continue;
      }
      if (i == nr - 1) {
        // Outer boundary rows.
        if (bc.psi_outer || bc.omega_outer) {
          const double psi_d = bc.psi_outer ? bc.psi_outer(th) : 0.0;
          const double om_d = bc.omega_outer ? bc.omega_outer(th) : 0.0;
          residual[P(i, j)] = state[P(i, j)] - psi_d;
          add(P(i, j), P(i, j), 1.0);
          residual[W(i, j)] = state[W(i, j)] - om_d;
          add(W(i, j), W(i, j), 1.0);
        } else if (bc.outer == OuterBCKind::Open) {
          // Linear radial extrapolation of ψ; the vorticity has decayed by
          // the outer ring, and ω = 0 (rather than a second extrapolation
          // row) is what keeps the θ-mean mode of the system nonsingular.
          residual[P(i, j)] = state[P(nr - 1, j)] - 2.0 * state[P(nr - 2, j)] +
                              state[P(nr - 3, j)];
          add(P(i, j), P(nr - 1, j), 1.0);
          add(P(i, j), P(nr - 2, j), -2.0);
          add(P(i, j), P(nr - 3, j), 1.0);
          residual[W(i, j)] = state[W(nr - 1, j)];
          add(W(i, j), W(nr - 1, j), 1.0);
        } else {  // Dirichlet
          residual[P(i, j)] = state[P(i, j)];
          add(P(i, j), P(i, j), 1.0);
          residual[W(i, j)] = state[W(i, j)];
          add(W(i, j), W(i, j), 1.0);
        }
        continue;
      }

      // Interior rows are kept in physical units (the log-polar Laplacian
      // carries e^{−2s}); this equilibrates the rows against the O(1)
      // boundary rows and keeps the residual norm meaningful.
      const double ie2s = 1.0 / e2s;

      // Stream Poisson equation Δψ = ω.
      residual[P(i, j)] =
          ie2s *
              ((state[P(i + 1, j)] - 2.0 * state[P(i, j)] +
                state[P(i - 1, j)]) *
                   ihs2 +
               (state[P(i, jp)] - 2.0 * state[P(i, j)] + state[P(i, jm)]) *
                   iht2) -
          state[W(i, j)];
      add(P(i, j), P(i + 1, j), ie2s * ihs2);
      add(P(i, j), P(i - 1, j), ie2s * ihs2);
      add(P(i, j), P(i, jp), ie2s * iht2);
      add(P(i, j), P(i, jm), ie2s * iht2);
      add(P(i, j), P(i, j), ie2s * -2.0 * (ihs2 + iht2));
      add(P(i, j), W(i, j), -1.0);

      // Vorticity transport Δω − u·∇ω = ∇∧f with
      // u·∇ω = e^{−2s}(ψ_s ω_θ − (ψ_θ + c_θ) ω_s).
      const double psi_s = (state[P(i + 1, j)] - state[P(i - 1, j)]) * i2hs;
      const double psi_t =
          (state[P(i, jp)] - state[P(i, jm)]) * i2ht + bc.c_theta;
      const double om_s = (state[W(i + 1, j)] - state[W(i - 1, j)]) * i2hs;
      const double om_t = (state[W(i, jp)] - state[W(i, jm)]) * i2ht;
      double g = 0.0;
      if (forcing && !forcing->empty())
        g = forcing->curl(Point{r * std::cos(th), r * std::sin(th)});
      residual[W(i, j)] =
          ie2s *
              ((state[W(i + 1, j)] - 2.0 * state[W(i, j)] +
                state[W(i - 1, j)]) *
                   ihs2 +
               (state[W(i, jp)] - 2.0 * state[W(i, j)] + state[W(i, jm)]) *
                   iht2 -
               (psi_s * om_t - psi_t * om_s)) -
          g;
      add(W(i, j), W(i + 1, j), ie2s * (ihs2 + psi_t * i2hs));
      add(W(i, j), W(i - 1, j), ie2s * (ihs2 - psi_t * i2hs));
      add(W(i, j), W(i, jp), ie2s * (iht2 - psi_s * i2ht));
      add(W(i, j), W(i, jm), ie2s * (iht2 + psi_s * i2ht));
      add(W(i, j), W(i, j), ie2s * -2.0 * (ihs2 + iht2));
      add(W(i, j), P(i + 1, j), ie2s * -om_t * i2hs);
      add(W(i, j), P(i - 1, j), ie2s * om_t * i2hs);
      add(W(i, j), P(i, jp), ie2s * om_s * i2ht);
      add(W(i, j), P(i, jm), ie2s * -om_s * i2ht);
    }
  }

  if (jacobian) {
    jacobian->resize(n_unknowns, n_unknowns);
    jacobian->setFromTriplets(trip.begin(), trip.end());
  }
}

// --- Newton -------------------------------------------------------------------

GridSolution newton_solve(const AnnularGrid& grid,
                          const BoundaryConditionSpec& bc,
                          const SolverForcing* forcing,
                          const GridSolution* seed, const NewtonOptions& opts) {
  grid.validate();
  const int n_unknowns = 2 * grid.n_nodes();

  GridSolution sol;
  sol.grid = grid;
  sol.bc = bc;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_unknowns);
  if (seed) {
    if (static_cast<int>(seed->psi.size()) != grid.n_nodes() ||
        static_cast<int>(seed->omega.size()) != grid.n_nodes())
      throw std::invalid_argument("newton_solve: seed dimension mismatch");
    for (int k = 0; k < grid.n_nodes(); ++k) {
      x[2 * k] = seed->psi[k];
      x[2 * k + 1] = seed->omega[k];
    }
  }

  Eigen::VectorXd res;
  Eigen::SparseMatrix<double> jac;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool analyzed = false;

  assemble_system(grid, bc, forcing, x, res, nullptr);
  const double norm0 = res.norm();
  const double target = opts.tol * std::max(norm0, 1e-30) + 1e-12;
  double norm = norm0;

  sol.status = SolveStatus::Diverged;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    if (norm <= target) {
      sol.status = SolveStatus::Converged;
      break;
    }
    assemble_system(grid, bc, forcing, x, res, &jac);
    if (!analyzed) {
      lu.analyzePattern(jac);
      analyzed = true;
    }
    lu.factorize(jac);
    if (lu.info() != Eigen::Success) {
      sol.status = SolveStatus::LinearSolveFailed;
      break;
    }
    const Eigen::VectorXd dx = lu.solve(-res);
    if (lu.info() != Eigen::Success || !dx.allFinite()) {
      sol.status = SolveStatus::LinearSolveFailed;
      break;
    }
    // Backtracking on the residual 2-norm.
    double lambda = 1.0;
    double new_norm = norm;
    Eigen::VectorXd xn;
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      xn = x + lambda * dx;
      assemble_system(grid, bc, forcing, xn, res, nullptr);
      new_norm = res.norm();
      if (std::isfinite(new_norm) && new_norm < norm) {
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      sol.status = SolveStatus::Diverged;
      break;
    }
    x = xn;
    norm = new_norm;
  }
  if (iter == opts.max_iter && norm > target) sol.status = SolveStatus::Diverged;
  if (norm <= target) sol.status = SolveStatus::Converged;

  sol.newton_iterations = iter;
  sol.residual_norm = norm;
  sol.psi.resize(grid.n_nodes());
  sol.omega.resize(grid.n_nodes());
  for (int k = 0; k < grid.n_nodes(); ++k) {
    sol.psi[k] = x[2 * k];
    sol.omega[k] = x[2 * k + 1];
  }
  return sol;
}

// --- derived fields -------------------------------------------------------------

void GridSolution::recover_fields(const SolverForcing* forcing) {
  const AnnularGrid& g = grid;
  const int nr = g.n_r, nt = g.n_theta;
  const double hs = g.hs(), ht = g.ht();
  u_r.assign(g.n_nodes(), 0.0);
  u_t.assign(g.n_nodes(), 0.0);
  p.assign(g.n_nodes(), 0.0);

  auto ds = [&](const std::vector<double>& a, int i, int j) {
    if (i == 0)
      return (-3.0 * a[g.idx(0, j)] + 4.0 * a[g.idx(1, j)] - a[g.idx(2, j)]) /
             (2.0 * hs);
    if (i == nr - 1)
      return (3.0 * a[g.idx(nr - 1, j)] - 4.0 * a[g.idx(nr - 2, j)] +
              a[g.idx(nr - 3, j)]) /
             (2.0 * hs);
    return (a[g.idx(i + 1, j)] - a[g.idx(i - 1, j)]) / (2.0 * hs);
  };
  auto dt = [&](const std::vector<double>& a, int i, int j) {
    const int jp = (j + 1) % nt, jm = (j + nt - 1) % nt;
    return (a[g.idx(i, jp)] - a[g.idx(i, jm)]) / (2.0 * ht);
  };

  for (int i = 0; i < nr; ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < nt; ++j) {
      u_r[g.idx(i, j)] = -(dt(psi, i, j) + bc.c_theta) * inv_r;
      u_t[g.idx(i, j)] = ds(psi, i, j) * inv_r;
    }
  }

  // Pressure by line integration of the momentum equation:
  // ∇p = Δu − u·∇u − f with Δu = ∇∧ω for a divergence-free field.
  std::vector<double> dpds(g.n_nodes()), dpdt(g.n_nodes());
  for (int i = 0; i < nr; ++i) {
    const double r = g.r(i), inv_r = 1.0 / r;
    for (int j = 0; j < nt; ++j) {
      const int k = g.idx(i, j);
      const double th = g.theta(j);
      const double lap_r = -dt(omega, i, j) * inv_r;
      const double lap_t = ds(omega, i, j) * inv_r;
      const double ur = u_r[k], ut = u_t[k];
      const double adv_r = ur * ds(u_r, i, j) * inv_r +
                           ut * dt(u_r, i, j) * inv_r - ut * ut * inv_r;
      const double adv_t = ur * ds(u_t, i, j) * inv_r +
                           ut * dt(u_t, i, j) * inv_r + ur * ut * inv_r;
      Vec2 fv{};
      if (forcing && !forcing->empty())
        fv = forcing->f(Point{r * std::cos(th), r * std::sin(th)});
      const double fr = fv.dot(e_r(th)), ft = fv.dot(e_theta(th));
      dpds[k] = r * (lap_r - adv_r - fr);  // ∂p/∂s = r·∂p/∂r
      dpdt[k] = r * (lap_t - adv_t - ft);  // ∂p/∂θ = r·(∇p)_θ
    }
  }
  // Integrate along the ray θ = 0, then around each circle; the loop
  // closure defect (discretization error) is removed linearly so p stays
  // single-valued.
  p[g.idx(0, 0)] = 0.0;
  for (int i = 1; i < nr; ++i)
    p[g.idx(i, 0)] = p[g.idx(i - 1, 0)] +
                     0.5 * hs * (dpds[g.idx(i - 1, 0)] + dpds[g.idx(i, 0)]);
  for (int i = 0; i < nr; ++i) {
    double closure = 0.0;
    for (int j = 0; j < nt; ++j) {
      const int jn = (j + 1) % nt;
      closure += 0.5 * ht * (dpdt[g.idx(i, j)] + dpdt[g.idx(i, jn)]);
    }
    double acc = 0.0;
    for (int j = 1; j < nt; ++j) {
      acc += 0.5 * ht * (dpdt[g.idx(i, j - 1)] + dpdt[g.idx(i, j)]);
      p[g.idx(i, j)] =
          p[g.idx(i, 0)] + acc - closure * (g.theta(j) / (2.0 * kPi));
    }
  }
}

namespace {

// Catmull-Rom value and derivative on one cell, local coordinate u ∈ [0,1].
void cr1(const double q[4], double u, double& v, double& dv) {
  const double a = -q[0] + 3.0 * q[1] - 3.0 * q[2] + q[3];
  const double b = 2.0 * q[0] - 5.0 * q[1] + 4.0 * q[2] - q[3];
  const double c = -q[0] + q[2];
  v = 0.5 * (2.0 * q[1] + u * (c + u * (b + u * a)));
  dv = 0.5 * (c + u * (2.0 * b + 3.0 * u * a));
}

struct Interp2 {
  double v = 0.0, dds = 0.0, ddt = 0.0;
};

Interp2 interp2(const AnnularGrid& g, const std::vector<double>& a, double s,
                double t) {
  const int nr = g.n_r, nt = g.n_theta;
  const double hs = g.hs(), ht = g.ht();
  double fs = (s - g.s_inner()) / hs;
  int is = static_cast<int>(std::floor(fs));
  is = std::max(0, std::min(nr - 2, is));
  const double us = fs - is;
  const double ft = t / ht;
  int it = static_cast<int>(std::floor(ft));
  const double ut = ft - it;

  double col[4], dcol[4];
  for (int k = 0; k < 4; ++k) {
    const int i = std::max(0, std::min(nr - 1, is - 1 + k));
    double q[4];
    for (int m = 0; m < 4; ++m) {
      const int j = ((it - 1 + m) % nt + nt) % nt;
      q[m] = a[g.idx(i, j)];
    }
    cr1(q, ut, col[k], dcol[k]);
  }
  Interp2 out;
  double dv;
  cr1(col, us, out.v, dv);
  out.dds = dv / hs;
  double vdt, ddt_ds;
  cr1(dcol, us, vdt, ddt_ds);
  out.ddt = vdt / ht;
  return out;
}

}  // namespace

FlowJet GridSolution::eval(const Point& x) const {
  if (u_r.empty())
    throw std::logic_error("GridSolution::eval: call recover_fields() first");
  const double r = x.r();
  if (!(r >= grid.r_inner && r <= grid.r_outer))
    throw std::domain_error("GridSolution::eval: point outside grid");
  const double s = std::log(r);
  double th = x.theta();
  if (th < 0.0) th += 2.0 * kPi;

  const Interp2 qr = interp2(grid, u_r, s, th);
  const Interp2 qt = interp2(grid, u_t, s, th);
  const Interp2 qp = interp2(grid, p, s, th);

  const Vec2 er = e_r(th), et = e_theta(th);
  const double inv_r = 1.0 / r;
  // ∂_r = (1/r)∂_s; frame derivatives contribute the u/r terms.
  const Vec2 du_dr = er * (qr.dds * inv_r) + et * (qt.dds * inv_r);
  const Vec2 du_dt_over_r =
      er * ((qr.ddt - qt.v) * inv_r) + et * ((qr.v + qt.ddt) * inv_r);

  FlowJet out;
  out.u = er * qr.v + et * qt.v;
  out.p = qp.v;
  out.grad_u = Mat2::outer(du_dr, er) + Mat2::outer(du_dt_over_r, et);
  out.grad_p = er * (qp.dds * inv_r) + et * (qp.ddt * inv_r);
  out.has_hessian = false;
  return out;
}

FieldFn GridSolution::field() const {
  if (u_r.empty())
    throw std::logic_error("GridSolution::field: call recover_fields() first");
  const GridSolution* self = this;
  return [self](const Point& x) { return self->eval(x); };
}

// --- I/O ---------------------------------------------------------------------

void GridSolution::write_csv(const std::string& path) const {
  if (u_r.empty())
    throw std::logic_error("GridSolution::write_csv: call recover_fields()");
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("write_csv: cannot open " + path);
  std::fprintf(fp, "r,theta,u1,u2,p\n");
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) {
      const int k = grid.idx(i, j);
      const double th = grid.theta(j);
      const Vec2 u = e_r(th) * u_r[k] + e_theta(th) * u_t[k];
      std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.r(i), th, u.x,
                   u.y, p[k]);
    }
  }
  std::fclose(fp);
}

namespace {
constexpr char kMagic[8] = {'p', 'f', 's', 'o', 'l', 'v', '0', '1'};
}

void GridSolution::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save: cannot open " + path);
  out.write(kMagic, 8);
  auto wd = [&](double v) { out.write(reinterpret_cast<char*>(&v), 8); };
  auto wi = [&](int v) { out.write(reinterpret_cast<char*>(&v), 4); };
  wd(grid.r_inner);
  wd(grid.r_outer);
  wi(grid.n_r);
  wi(grid.n_theta);
  wi(static_cast<int>(status));
  wi(newton_iterations);
  wd(residual_norm);
  wd(bc.c0.x);
  wd(bc.c0.y);
  wd(bc.c1[0]);
  wd(bc.c1[1]);
  wd(bc.c1[2]);
  wd(bc.c_theta);
  out.write(reinterpret_cast<const char*>(psi.data()), 8 * psi.size());
  out.write(reinterpret_cast<const char*>(omega.data()), 8 * omega.size());
}

GridSolution GridSolution::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("load: bad magic in " + path);
  GridSolution sol;
  auto rd = [&]() {
    double v;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  auto ri = [&]() {
    int v;
    in.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  sol.grid.r_inner = rd();
  sol.grid.r_outer = rd();
  sol.grid.n_r = ri();
  sol.grid.n_theta = ri();
  sol.status = static_cast<SolveStatus>(ri());
  sol.newton_iterations = ri();
  sol.residual_norm = rd();
  sol.bc.c0.x = rd();
  sol.bc.c0.y = rd();
  sol.bc.c1[0] = rd();
  sol.bc.c1[1] = rd();
  sol.bc.c1[2] = rd();
  sol.bc.c_theta = rd();
  sol.psi.resize(sol.grid.n_nodes());
  sol.omega.resize(sol.grid.n_nodes());
  in.read(reinterpret_cast<char*>(sol.psi.data()), 8 * sol.psi.size());
  in.read(reinterpret_cast<char*>(sol.omega.data()), 8 * sol.omega.size());
  if (!in) throw std::runtime_error("load: truncated file " + path);
  return sol;
}

// --- continuation ---------------------------------------------------------------

std::vector<SweepPoint> continuation_sweep(const ContinuationPlan& plan,
                                           const AnnularGrid& grid,
                                           const NewtonOptions& opts) {
  if (!plan.make_bc)
    throw std::invalid_argument("continuation_sweep: make_bc required");
  const bool p1_minor = plan.order == ContinuationPlan::Order::Param1Minor;
  const std::vector<double>& major = p1_minor ? plan.param2 : plan.param1;
  const std::vector<double>& minor = p1_minor ? plan.param1 : plan.param2;

  std::vector<SweepPoint> out;
  // Warm starts by index (the vector grows, pointers would dangle): within a
  // line, seed from the previous converged point; the first point of a line
  // seeds from the first converged point of the previous line.
  std::ptrdiff_t line_head = -1;
  for (std::size_t a = 0; a < major.size(); ++a) {
    std::ptrdiff_t prev = line_head;
    line_head = -1;
    for (std::size_t b = 0; b < minor.size(); ++b) {
      const double p1 = p1_minor ? minor[b] : major[a];
      const double p2 = p1_minor ? major[a] : minor[b];
      SweepPoint pt;
      pt.p1 = p1;
      pt.p2 = p2;
      const BoundaryConditionSpec bc = plan.make_bc(p1, p2);
      SolverForcing forcing;
      if (plan.make_forcing) forcing = plan.make_forcing(p1, p2);
      const GridSolution* seed = prev >= 0 ? &out[prev].solution : nullptr;
      pt.solution = newton_solve(
          grid, bc, plan.make_forcing ? &forcing : nullptr, seed, opts);
      pt.status = pt.solution.status;
      out.push_back(std::move(pt));
      if (out.back().status == SolveStatus::Converged) {
        prev = static_cast<std::ptrdiff_t>(out.size()) - 1;
        if (line_head < 0) line_head = prev;
      }
    }
  }
  return out;
}

}  // namespace planeflow
