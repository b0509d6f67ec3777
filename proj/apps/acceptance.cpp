// Acceptance gate: runs every acceptance criterion in order and prints one
// pass/fail line per criterion with the measured values. Exit code is the
// number of failed criteria.

#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "planeflow/verify.hpp"

using namespace planeflow;

int main(int argc, char** argv) {
  bool fast = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fast") == 0) fast = true;

  struct Criterion {
    const char* name;
    bool slow;
    std::function<std::vector<CheckLine>()> run;
  };
  const std::vector<Criterion> criteria = {
      {"01 closed-form solutions solve the equations", false,
       [] { return verify_exact_solutions(); }},
      {"02 inviscid correction integral", false,
       [] { return verify_euler_correction(); }},
      {"03 inviscid net force vs contour integral", false,
       [] { return verify_euler_net_force(); }},
      {"04 wake ansatz residual orders", false,
       [] { return verify_wake_residual_orders(); }},
      {"05 wake force recovered from contours", false,
       [] { return verify_wake_force(); }},
      {"06 forced linear response oracle", false,
       [] { return verify_oracle(); }},
      {"07 symmetry zero patterns", false,
       [] { return verify_symmetry_table(); }},
      {"08 manufactured-solution convergence", false,
       [] { return verify_solver_convergence(); }},
      {"09 solved flows reproduce the asymptotes", true,
       [] { return verify_wake_reproduction(); }},
      {"10 wake-to-vortex transition along the torque line", true,
       [] { return verify_phase_transition(); }},
      {"11 double wake from zero-mean forcing", true,
       [] { return verify_double_wake(); }},
      {"12 corrector cancels the cross coupling", false,
       [] { return verify_cross_corrector(); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (fast && c.slow) {
      std::printf("SKIP %s (slow; rerun without --fast)\n", c.name);
      continue;
    }
    const auto lines = c.run();
    bool pass = true;
    std::string detail;
    for (const auto& l : lines) {
      pass = pass && l.passed;
      if (!detail.empty()) detail += " | ";
      if (lines.size() > 1 && !l.passed) detail += "[fail] ";
      detail += l.detail;
    }
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", c.name,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed;
}
