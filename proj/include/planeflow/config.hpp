#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "planeflow/solver.hpp"

namespace planeflow {

// Any malformed, missing, or unknown configuration content.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// INI-style experiment configuration:
//   # comment
//   [section]
//   key = value          (value: number, word, or comma-separated list)
// Unknown sections and unknown keys are hard errors (checked by the
// section builders below, which each declare their full key set).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text,
                             const std::string& origin = "<string>");

  bool has_section(const std::string& s) const;
  bool has_key(const std::string& s, const std::string& k) const;
  std::vector<std::string> sections() const;

  std::string get_string(const std::string& s, const std::string& k) const;
  std::string get_string(const std::string& s, const std::string& k,
                         const std::string& fallback) const;
  double get_double(const std::string& s, const std::string& k) const;
  double get_double(const std::string& s, const std::string& k,
                    double fallback) const;
  int get_int(const std::string& s, const std::string& k) const;
  int get_int(const std::string& s, const std::string& k, int fallback) const;
  std::vector<double> get_list(const std::string& s,
                               const std::string& k) const;

  // Throws ConfigError when the section holds a key not in `known`.
  void require_known(const std::string& s,
                     const std::vector<std::string>& known) const;
  // Throws ConfigError when a section outside `known` is present.
  void require_known_sections(const std::vector<std::string>& known) const;

  const std::map<std::string, std::map<std::string, std::string>>& raw()
      const {
    return data_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
  std::string origin_;
};

// Section builders (validate key sets, ranges, and enum spellings).
AnnularGrid grid_from_config(const Config& cfg);
BoundaryConditionSpec bc_from_config(const Config& cfg);
SolverForcing forcing_from_config(const Config& cfg);
NewtonOptions solver_from_config(const Config& cfg);

// Sweep block: axes named F (pulling strength), M (torque), or A (forcing
// amplitude; requires a [forcing] block for n and eps). Values come either
// from `values<i> = a, b, c` or `range<i> = lo, hi` + `steps<i> = n`.
struct SweepSpec {
  std::string axis1, axis2;          // axis2 empty for a 1-D sweep
  std::vector<double> values1, values2;
  ContinuationPlan::Order order = ContinuationPlan::Order::Param2Minor;
  double fit_rmin = 30.0, fit_rmax = 300.0;
  bool fold_mod_pi = false;
};
SweepSpec sweep_from_config(const Config& cfg);

// Assembles the continuation plan for a sweep (bc/forcing factories bound to
// the axis names); forcing axes pull n and eps from the [forcing] block.
ContinuationPlan plan_from_config(const Config& cfg, const SweepSpec& sweep);

}  // namespace planeflow
