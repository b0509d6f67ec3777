#include "planeflow/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace planeflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
      throw ConfigError(where + ": trailing characters in number '" + s + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(where + ": not a number: '" + s + "'");
  }
}

}  // namespace

Config Config::parse_string(const std::string& text,
                            const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream is(text);
  std::string raw_line, section;
  int lineno = 0;
  while (std::getline(is, raw_line)) {
    ++lineno;
    std::string s = raw_line;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const std::string where =
        origin + ":" + std::to_string(lineno);
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError(where + ": malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty())
        throw ConfigError(where + ": empty section name");
      cfg.data_[section];  // register even if empty
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + s + "'");
    if (section.empty())
      throw ConfigError(where + ": key outside any [section]");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (cfg.data_[section].count(key))
      throw ConfigError(where + ": duplicate key '" + key + "' in [" +
                        section + "]");
    cfg.data_[section][key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_string(buf.str(), path);
}

bool Config::has_section(const std::string& s) const {
  return data_.count(s) > 0;
}

bool Config::has_key(const std::string& s, const std::string& k) const {
  const auto it = data_.find(s);
  return it != data_.end() && it->second.count(k) > 0;
}

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, kv] : data_) out.push_back(name);
  return out;
}

std::string Config::get_string(const std::string& s,
                               const std::string& k) const {
  if (!has_key(s, k))
    throw ConfigError(origin_ + ": missing key '" + k + "' in [" + s + "]");
  return data_.at(s).at(k);
}

std::string Config::get_string(const std::string& s, const std::string& k,
                               const std::string& fallback) const {
  return has_key(s, k) ? data_.at(s).at(k) : fallback;
}

double Config::get_double(const std::string& s, const std::string& k) const {
  return parse_number(get_string(s, k), origin_ + " [" + s + "] " + k);
}

double Config::get_double(const std::string& s, const std::string& k,
                          double fallback) const {
  return has_key(s, k) ? get_double(s, k) : fallback;
}

int Config::get_int(const std::string& s, const std::string& k) const {
  const double v = get_double(s, k);
  const int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 1e-9)
    throw ConfigError(origin_ + " [" + s + "] " + k + ": expected integer");
  return i;
}

int Config::get_int(const std::string& s, const std::string& k,
                    int fallback) const {
  return has_key(s, k) ? get_int(s, k) : fallback;
}

std::vector<double> Config::get_list(const std::string& s,
                                     const std::string& k) const {
  const std::string raw = get_string(s, k);
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ConfigError(origin_ + " [" + s + "] " + k + ": empty list item");
    out.push_back(parse_number(item, origin_ + " [" + s + "] " + k));
  }
  if (out.empty())
    throw ConfigError(origin_ + " [" + s + "] " + k + ": empty list");
  return out;
}

void Config::require_known(const std::string& s,
                           const std::vector<std::string>& known) const {
  const auto it = data_.find(s);
  if (it == data_.end()) return;
  for (const auto& [key, value] : it->second)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(origin_ + ": unknown key '" + key + "' in [" + s +
                        "]");
}

void Config::require_known_sections(
    const std::vector<std::string>& known) const {
  for (const auto& [name, kv] : data_)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ConfigError(origin_ + ": unknown section [" + name + "]");
}

AnnularGrid grid_from_config(const Config& cfg) {
  cfg.require_known("grid", {"r_inner", "r_outer", "n_r", "n_theta"});
  AnnularGrid g;
  g.r_inner = cfg.get_double("grid", "r_inner", g.r_inner);
  g.r_outer = cfg.get_double("grid", "r_outer", g.r_outer);
  g.n_r = cfg.get_int("grid", "n_r", g.n_r);
  g.n_theta = cfg.get_int("grid", "n_theta", g.n_theta);
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[grid]: ") + e.what());
  }
  return g;
}

BoundaryConditionSpec bc_from_config(const Config& cfg) {
  cfg.require_known("bc", {"c0", "c1", "c_theta", "inner", "outer"});
  BoundaryConditionSpec bc;
  if (!cfg.has_section("bc")) return bc;
  if (cfg.has_key("bc", "c0")) {
    const auto v = cfg.get_list("bc", "c0");
    if (v.size() != 2) throw ConfigError("[bc] c0: expected 2 values");
    bc.c0 = {v[0], v[1]};
  }
  if (cfg.has_key("bc", "c1")) {
    const auto v = cfg.get_list("bc", "c1");
    if (v.size() != 3) throw ConfigError("[bc] c1: expected 3 values");
    bc.c1 = {v[0], v[1], v[2]};
  }
  bc.c_theta = cfg.get_double("bc", "c_theta", 0.0);
  const std::string inner = cfg.get_string("bc", "inner", "velocity");
  if (inner == "velocity")
    bc.inner = InnerBCKind::Velocity;
  else if (inner == "natural")
    bc.inner = InnerBCKind::Natural;
  else
    throw ConfigError("[bc] inner: expected 'velocity' or 'natural', got '" +
                      inner + "'");
  const std::string outer = cfg.get_string("bc", "outer", "open");
  if (outer == "open")
    bc.outer = OuterBCKind::Open;
  else if (outer == "dirichlet")
    bc.outer = OuterBCKind::Dirichlet;
  else
    throw ConfigError("[bc] outer: expected 'open' or 'dirichlet', got '" +
                      outer + "'");
  return bc;
}

SolverForcing forcing_from_config(const Config& cfg) {
  cfg.require_known("forcing", {"n", "amplitude", "eps"});
  if (!cfg.has_section("forcing")) return {};
  const int n = cfg.get_int("forcing", "n");
  const double amplitude = cfg.get_double("forcing", "amplitude");
  const double eps = cfg.get_double("forcing", "eps", 0.5);
  if (n < 1) throw ConfigError("[forcing] n: must be >= 1");
  if (!(eps > 0.0)) throw ConfigError("[forcing] eps: must be > 0");
  return delta_forcing_with_curl(n, amplitude, eps);
}

NewtonOptions solver_from_config(const Config& cfg) {
  cfg.require_known("solver", {"tol", "max_iter", "damping"});
  NewtonOptions o;
  o.tol = cfg.get_double("solver", "tol", o.tol);
  o.max_iter = cfg.get_int("solver", "max_iter", o.max_iter);
  o.max_halvings = cfg.get_int("solver", "damping", o.max_halvings);
  if (!(o.tol > 0.0)) throw ConfigError("[solver] tol: must be > 0");
  if (o.max_iter < 1) throw ConfigError("[solver] max_iter: must be >= 1");
  if (o.max_halvings < 0) throw ConfigError("[solver] damping: must be >= 0");
  return o;
}

namespace {

std::vector<double> axis_values(const Config& cfg, int i) {
  const std::string values = "values" + std::to_string(i);
  const std::string range = "range" + std::to_string(i);
  const std::string steps = "steps" + std::to_string(i);
  if (cfg.has_key("sweep", values)) {
    if (cfg.has_key("sweep", range) || cfg.has_key("sweep", steps))
      throw ConfigError("[sweep]: give either " + values + " or " + range +
                        "/" + steps + ", not both");
    return cfg.get_list("sweep", values);
  }
  const auto lohi = cfg.get_list("sweep", range);
  if (lohi.size() != 2)
    throw ConfigError("[sweep] " + range + ": expected 'lo, hi'");
  const int n = cfg.get_int("sweep", steps);
  if (n < 1) throw ConfigError("[sweep] " + steps + ": must be >= 1");
  std::vector<double> out;
  for (int k = 0; k < n; ++k)
    out.push_back(n == 1 ? lohi[0]
                         : lohi[0] + (lohi[1] - lohi[0]) * k / (n - 1));
  return out;
}

void check_axis_name(const std::string& axis, const Config& cfg) {
  if (axis != "F" && axis != "M" && axis != "A")
    throw ConfigError("[sweep] axis: expected F, M, or A, got '" + axis +
                      "'");
  if (axis == "A" && !cfg.has_section("forcing"))
    throw ConfigError("[sweep]: axis A needs a [forcing] block for n and eps");
}

}  // namespace

SweepSpec sweep_from_config(const Config& cfg) {
  cfg.require_known("sweep",
                    {"axis1", "axis2", "values1", "values2", "range1",
                     "range2", "steps1", "steps2", "order", "fit_rmin",
                     "fit_rmax", "fold"});
  if (!cfg.has_section("sweep"))
    throw ConfigError("sweep requires a [sweep] block");
  SweepSpec s;
  s.axis1 = cfg.get_string("sweep", "axis1");
  check_axis_name(s.axis1, cfg);
  s.values1 = axis_values(cfg, 1);
  if (cfg.has_key("sweep", "axis2")) {
    s.axis2 = cfg.get_string("sweep", "axis2");
    check_axis_name(s.axis2, cfg);
    if (s.axis2 == s.axis1)
      throw ConfigError("[sweep]: axis1 and axis2 must differ");
    s.values2 = axis_values(cfg, 2);
  } else {
    s.values2 = {0.0};
  }
  const std::string order = cfg.get_string("sweep", "order", "param2-minor");
  if (order == "param2-minor")
    s.order = ContinuationPlan::Order::Param2Minor;
  else if (order == "param1-minor")
    s.order = ContinuationPlan::Order::Param1Minor;
  else
    throw ConfigError(
        "[sweep] order: expected 'param1-minor' or 'param2-minor', got '" +
        order + "'");
  s.fit_rmin = cfg.get_double("sweep", "fit_rmin", s.fit_rmin);
  s.fit_rmax = cfg.get_double("sweep", "fit_rmax", s.fit_rmax);
  if (!(s.fit_rmin > 0.0 && s.fit_rmax > s.fit_rmin))
    throw ConfigError("[sweep]: need 0 < fit_rmin < fit_rmax");
  s.fold_mod_pi = cfg.get_int("sweep", "fold", 0) != 0;
  return s;
}

ContinuationPlan plan_from_config(const Config& cfg, const SweepSpec& sweep) {
  ContinuationPlan plan;
  plan.param1 = sweep.values1;
  plan.param2 = sweep.values2;
  plan.order = sweep.order;

  const BoundaryConditionSpec base_bc = bc_from_config(cfg);
  const std::string a1 = sweep.axis1, a2 = sweep.axis2;
  plan.make_bc = [base_bc, a1, a2](double p1, double p2) {
    BoundaryConditionSpec bc = base_bc;
    auto apply = [&](const std::string& axis, double v) {
      if (axis == "F") bc.c0 = {-v, 0.0};
      if (axis == "M") bc.c1[2] = -v;
    };
    apply(a1, p1);
    if (!a2.empty()) apply(a2, p2);
    return bc;
  };

  const bool forced = (a1 == "A") || (a2 == "A") || cfg.has_section("forcing");
  if (forced) {
    const int n = cfg.get_int("forcing", "n");
    const double eps = cfg.get_double("forcing", "eps", 0.5);
    const double fixed_amp = cfg.get_double("forcing", "amplitude", 0.0);
    plan.make_forcing = [n, eps, fixed_amp, a1, a2](double p1, double p2) {
      double amp = fixed_amp;
      if (a1 == "A") amp = p1;
      if (a2 == "A") amp = p2;
      return delta_forcing_with_curl(n, amp, eps);
    };
  }
  return plan;
}

}  // namespace planeflow
