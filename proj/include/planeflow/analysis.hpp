#pragma once

#include <string>
#include <vector>

#include "planeflow/geometry.hpp"
#include "planeflow/residual.hpp"
#include "planeflow/solver.hpp"

namespace planeflow {

// Far-field profile d(r) = max_θ |u(r, θ)|, a(r) = argmax_θ |u(r, θ)|.
struct RayProfile {
  std::vector<double> radii;       // strictly increasing
  std::vector<double> d;           // ≥ 0
  std::vector<double> a;           // ∈ (−π, π]
  std::vector<bool> degenerate;    // |u| nearly θ-independent at this radius
};

RayProfile ray_profile(const FieldFn& u, const std::vector<double>& radii,
                       int n_theta = 512);

// Logarithmically spaced radii (inclusive endpoints).
std::vector<double> log_radii(double rmin, double rmax, int n);

// Least-squares log-log fit of positive samples d(r) ~ C·r^exponent.
double fit_profile_exponent(const RayProfile& profile);

// Circular statistics of a set of angles; with `fold_mod_pi` the angles are
// treated as axial data (folded modulo π, as for double wakes).
struct CircularStats {
  double mean = 0.0;  // ∈ (−π, π], or (−π/2, π/2] when folded
  double std = 0.0;   // circular standard deviation, large when degenerate
};
CircularStats circular_stats(const std::vector<double>& angles,
                             bool fold_mod_pi = false);

// μ minimizing sup over the window of |r·u − μ·e_θ| (Chebyshev fit of the
// harmonic asymptote u ≈ μ e_θ / r).
struct HarmonicFit {
  double mu = 0.0;
  double sup_residual = 0.0;
};
HarmonicFit harmonic_fit(const FieldFn& u, double rmin, double rmax,
                         int n_r = 9, int n_theta = 64);

// Nonlinear least squares of |u| against the leading wake speed profile over
// (|F|, θ₀); `fold_mod_pi` fits axial double wakes. Seeded from the ray
// profile via the on-axis amplitude relation a = (3 r^{1/3} d / 2)^{1/2}.
struct WakeFitResult {
  Vec2 F{};
  double rms = 0.0;           // absolute rms misfit of |u|
  double relative_rms = 0.0;  // rms / rms of the data
  bool rejected = false;      // wrong decay class / poor fit
};
WakeFitResult wake_fit(const FieldFn& u, double rmin, double rmax,
                       bool fold_mod_pi = false, int n_r = 9,
                       int n_theta = 128);

enum class PhaseStatus { Ok, Degenerate, Diverged };
const char* to_string(PhaseStatus s);

struct PhaseMapRow {
  double param1 = 0.0, param2 = 0.0;
  double exponent = 0.0;
  double mean_angle = 0.0;
  double angle_std = 0.0;
  Vec2 body_force{};
  double body_torque = 0.0;
  PhaseStatus status = PhaseStatus::Diverged;
};

struct PhaseMapOptions {
  double fit_rmin = 30.0;
  double fit_rmax = 300.0;
  int n_radii = 17;
  int n_theta = 512;
  bool fold_mod_pi = false;
  double nu = 1.0;
  // Contour radius for the body force/torque; ≤ 0 means just outside the
  // inner boundary of each solution's grid.
  double contour_radius = 0.0;
  int n_quad = 512;
  // Rebuilds the forcing of a sweep point for pressure recovery.
  std::function<SolverForcing(double, double)> make_forcing;
};

std::vector<PhaseMapRow> phase_map(std::vector<SweepPoint>& sweep,
                                   const PhaseMapOptions& opts);

// Fixed CSV schemas (17 significant digits).
void write_profile_csv(const std::string& path, const RayProfile& profile);
void write_phasemap_csv(const std::string& path,
                        const std::vector<PhaseMapRow>& rows);

// Standalone SVG plots with the plotted data embedded as comments.
struct PlotSeries {
  std::string name;
  std::vector<double> x, y;
};
void svg_line_plot(const std::string& path, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel,
                   const std::vector<PlotSeries>& series, bool log_x = true);

// Heatmap of z(param1, param2) on a rectangular parameter grid; cells are
// laid out from the sorted unique parameter values.
void svg_heatmap(const std::string& path, const std::string& title,
                 const std::string& xlabel, const std::string& ylabel,
                 const std::vector<double>& param1,
                 const std::vector<double>& param2,
                 const std::vector<double>& z);

}  // namespace planeflow
