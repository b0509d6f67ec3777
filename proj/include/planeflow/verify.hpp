#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace planeflow {

// One acceptance check: a short name, the verdict, and the measured values
// that justify it (always printed, pass or fail).
struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast criteria (seconds each).
std::vector<CheckLine> verify_exact_solutions(unsigned seed = 12345);
std::vector<CheckLine> verify_euler_correction();
std::vector<CheckLine> verify_euler_net_force();
std::vector<CheckLine> verify_wake_residual_orders();
std::vector<CheckLine> verify_wake_force();
std::vector<CheckLine> verify_oracle(unsigned seed = 12345);
std::vector<CheckLine> verify_symmetry_table(unsigned seed = 12345);
std::vector<CheckLine> verify_solver_convergence();
std::vector<CheckLine> verify_cross_corrector();

// Desk-scale solver reproductions (minutes each). The options exist so unit
// tests can run reduced resolutions; defaults are the acceptance settings.
struct WakeReproductionOptions {
  int n_r = 192, n_theta = 384;
  double r_outer = 1e3;
  double fit_rmin = 30.0, fit_rmax = 300.0;
};
std::vector<CheckLine> verify_wake_reproduction(
    const WakeReproductionOptions& opts = {});

struct PhaseTransitionOptions {
  int n_r = 192, n_theta = 384;
  double r_outer = 1e3;
  double fit_rmin = 30.0, fit_rmax = 300.0;
  int n_torque_steps = 9;  // 𝓜 = 0, 4π, …, 4π(n−1)
};
std::vector<CheckLine> verify_phase_transition(
    const PhaseTransitionOptions& opts = {});

struct DoubleWakeOptions {
  int n_r = 192, n_theta = 256;
  double r_inner = 0.05, r_outer = 300.0;
  double fit_rmin = 15.0, fit_rmax = 150.0;
  double large_amplitude = 160.0;
  double small_amplitude = 0.2;
  double eps = 0.5;
};
std::vector<CheckLine> verify_double_wake(const DoubleWakeOptions& opts = {});

// Prints one "PASS name: detail" / "FAIL name: detail" line per check;
// returns the number of failures.
int print_report(std::ostream& os, const std::vector<CheckLine>& lines);

}  // namespace planeflow
