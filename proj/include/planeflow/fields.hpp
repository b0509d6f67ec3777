#pragma once

#include <map>
#include <string>
#include <vector>

#include "planeflow/cutoff.hpp"
#include "planeflow/flowjet.hpp"
#include "planeflow/geometry.hpp"

namespace planeflow {

// --- free-function evaluators -----------------------------------------

// Fundamental solution of the plane Stokes problem:
// E = (1/4π)[log|x|·I − x⊗x/|x|²], e = −x/(2π|x|²).
void eval_stokes_fundamental(const Point& x, Mat2& E, Vec2& e);

// One column j ∈ {0,1} of the fundamental solution as a flow jet
// (u = E·e_j, p = e_j-component of e).
FlowJet eval_stokes_fundamental_column(int j, const Point& x);

// Closed-form asymptotic terms S_0, S_1, S_2 with their pressures.
// coeffs has length 2 (order 0), 3 (order 1) or 4 (order 2, the A-vector).
// Requires |x| ≥ cutoff.outer (the exact forms outside the cutoff band).
FlowJet eval_asym_term(int order, const std::vector<double>& coeffs,
                       const Point& x, const CutoffProfile& cutoff = {});

// Smooth unit-flux carrier scaled by phi: u = phi·χ(r)/(2πr)·e_r.
FlowJet eval_flux_carrier(double phi, const Point& x,
                          const CutoffProfile& cutoff = {});

// Harmonic vortex u = −(m/4π)∇∧(χ log r), p = −½(mχ/(4πr))².
FlowJet eval_harmonic_vortex(double m, const Point& x,
                             const CutoffProfile& cutoff = {});

// Hamel's exact solution u = −3/(2r) e_r + (amp/(2√r) + mu/r) e_θ with the
// analytically reconstructed pressure.
FlowJet eval_hamel(double amp, double mu, const Point& x);

// Exact Euler solution from the stream function ψ = √r·φ₀(θ),
// φ₀ = amp·√(1 − λ cos(θ−θ₀)), p = −amp²/(4r).
FlowJet eval_euler_leading(double amp, double lambda, double theta0,
                           const Point& x);

// Closed-form net force carried by the Euler solution per the source text;
// see decisions ledger: the contour integral of the stress evaluates to
// −(this value)/(2π).
Vec2 euler_net_force_formula(double amp, double lambda, double theta0);

// Second-order corrector cancelling ν·ū₁·∇ū₁ for the truncated asymptotic
// ū₁ = A₀Σ + (A₁,A₂,A₃)·E₁ outside the cutoff. a_vec = (A₀, A₁, A₂, A₃).
FlowJet eval_cross_corrector(const std::vector<double>& a_vec, double nu,
                             const Point& x, const CutoffProfile& cutoff = {});

// Diagnostic amplitudes of the corrector as printed in the source, in both
// variants of the disputed square (see decisions ledger / open question).
enum class A2Variant { PrintedLinear, Squared };
double cross_corrector_a2(const std::vector<double>& a_vec, A2Variant v);

// Leading closed-form term of the n-th perturbative Stokes iterate.
FlowJet eval_perturb_iterate(int order, double A, double B, double M,
                             const Point& x, const CutoffProfile& cutoff = {});

// --- AnalyticField: named field families for diagnostics and the CLI ---

enum class FieldKind {
  StokesFundamentalColumn,
  AsymTerm0,
  AsymTerm1,
  AsymTerm2,
  FluxCarrier,
  HarmonicVortex,
  Hamel,
  EulerLeading,
  WakeUF,
  CrossCorrector,
  PerturbIterate,
};

class AnalyticField {
 public:
  FieldKind kind = FieldKind::HarmonicVortex;
  std::vector<double> params;
  CutoffProfile cutoff;

  AnalyticField() = default;
  AnalyticField(FieldKind k, std::vector<double> p, CutoffProfile c = {});

  FlowJet eval(const Point& x) const;
  // Smallest radius at which eval is defined (0 means everywhere except
  // possibly the origin itself).
  double validity_rmin() const;
  // Throws std::domain_error when x is outside the validity region.
  void check_domain(const Point& x) const;

  static AnalyticField stokes_column(int j);
  static AnalyticField asym_term(int order, std::vector<double> coeffs,
                                 CutoffProfile c = {});
  static AnalyticField flux_carrier(double phi, CutoffProfile c = {});
  static AnalyticField harmonic_vortex(double m, CutoffProfile c = {});
  static AnalyticField hamel(double amp, double mu);
  static AnalyticField euler_leading(double amp, double lambda, double theta0);
  static AnalyticField wake(Vec2 F);
  static AnalyticField cross_corrector(std::vector<double> a_vec, double nu,
                                       CutoffProfile c = {});
  static AnalyticField perturb_iterate(int order, double A, double B, double M,
                                       CutoffProfile c = {});

  // CLI entry point: kind by name, parameters by key=value map.
  static AnalyticField from_name(const std::string& name,
                                 const std::map<std::string, double>& kv);
  std::string name() const;
};

}  // namespace planeflow
