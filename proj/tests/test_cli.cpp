#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "planeflow/config.hpp"

using namespace planeflow;
namespace fs = std::filesystem;

namespace {

// Runs the installed CLI binary and returns its exit code.
int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(CLI_BINARY_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("planeflow_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) {
    const fs::path p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string operator/(const std::string& name) const {
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("config parser: sections, keys, comments, lists") {
  const Config cfg = Config::parse_string(
      "# leading comment\n"
      "[grid]\n"
      "r_inner = 0.5   # trailing comment\n"
      "n_r = 97\n"
      "[bc]\n"
      "c0 = -6.28, 0\n"
      "inner = natural\n");
  CHECK(cfg.has_section("grid"));
  CHECK(cfg.get_double("grid", "r_inner") == doctest::Approx(0.5));
  CHECK(cfg.get_int("grid", "n_r") == 97);
  CHECK(cfg.get_double("grid", "r_outer", 123.0) == doctest::Approx(123.0));
  const auto c0 = cfg.get_list("bc", "c0");
  REQUIRE(c0.size() == 2);
  CHECK(c0[0] == doctest::Approx(-6.28));
  CHECK(cfg.get_string("bc", "inner") == "natural");
}

TEST_CASE("config parser: malformed input is a hard error") {
  CHECK_THROWS_AS(Config::parse_string("[grid]\nr_inner 1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("key = 1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("[grid\nr = 1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse_string("[g]\na = 1\na = 2\n"), ConfigError);
  const Config cfg = Config::parse_string("[grid]\nn_r = 1.5\nr = x\n");
  CHECK_THROWS_AS(cfg.get_int("grid", "n_r"), ConfigError);
  CHECK_THROWS_AS(cfg.get_double("grid", "r"), ConfigError);
  CHECK_THROWS_AS(cfg.get_double("grid", "missing"), ConfigError);
}

TEST_CASE("config parser: unknown keys and sections rejected") {
  const Config cfg =
      Config::parse_string("[grid]\nn_r = 49\nbogus = 1\n[typo]\nx = 2\n");
  CHECK_THROWS_AS(grid_from_config(cfg), ConfigError);
  CHECK_THROWS_AS(cfg.require_known_sections({"grid", "bc"}), ConfigError);
  CHECK_NOTHROW(cfg.require_known_sections({"grid", "typo"}));
}

TEST_CASE("section builders validate values") {
  const Config good = Config::parse_string(
      "[grid]\nr_inner = 1\nr_outer = 100\nn_r = 49\nn_theta = 16\n"
      "[bc]\nc1 = 0, 0, -3\ninner = velocity\nouter = open\n"
      "[forcing]\nn = 2\namplitude = 1.5\neps = 0.5\n"
      "[solver]\ntol = 1e-9\nmax_iter = 20\n");
  const AnnularGrid g = grid_from_config(good);
  CHECK(g.n_r == 49);
  const BoundaryConditionSpec bc = bc_from_config(good);
  CHECK(bc.c1[2] == doctest::Approx(-3.0));
  CHECK(bc.inner == InnerBCKind::Velocity);
  CHECK_FALSE(forcing_from_config(good).empty());
  CHECK(solver_from_config(good).max_iter == 20);

  CHECK_THROWS_AS(
      bc_from_config(Config::parse_string("[bc]\ninner = sticky\n")),
      ConfigError);
  CHECK_THROWS_AS(
      bc_from_config(Config::parse_string("[bc]\nc0 = 1, 2, 3\n")),
      ConfigError);
  CHECK_THROWS_AS(
      grid_from_config(Config::parse_string("[grid]\nr_inner = -1\n")),
      ConfigError);
  CHECK_THROWS_AS(
      solver_from_config(Config::parse_string("[solver]\ntol = 0\n")),
      ConfigError);
}

TEST_CASE("sweep spec: axes, ranges, and the continuation plan") {
  const Config cfg = Config::parse_string(
      "[forcing]\nn = 2\neps = 0.5\n"
      "[sweep]\naxis1 = F\nvalues1 = 3.14, 6.28\n"
      "axis2 = A\nrange2 = 1, 3\nsteps2 = 3\n"
      "order = param2-minor\nfit_rmin = 20\nfit_rmax = 200\nfold = 1\n");
  const SweepSpec s = sweep_from_config(cfg);
  CHECK(s.axis1 == "F");
  CHECK(s.axis2 == "A");
  REQUIRE(s.values2.size() == 3);
  CHECK(s.values2[1] == doctest::Approx(2.0));
  CHECK(s.fold_mod_pi);

  const ContinuationPlan plan = plan_from_config(cfg, s);
  const BoundaryConditionSpec bc = plan.make_bc(3.14, 2.0);
  CHECK(bc.c0.x == doctest::Approx(-3.14));
  REQUIRE(static_cast<bool>(plan.make_forcing));
  CHECK_FALSE(plan.make_forcing(3.14, 2.0).empty());

  CHECK_THROWS_AS(sweep_from_config(Config::parse_string(
                      "[sweep]\naxis1 = Q\nvalues1 = 1\n")),
                  ConfigError);
  CHECK_THROWS_AS(sweep_from_config(Config::parse_string(
                      "[sweep]\naxis1 = A\nvalues1 = 1\n")),
                  ConfigError);
  CHECK_THROWS_AS(
      sweep_from_config(Config::parse_string(
          "[sweep]\naxis1 = F\nvalues1 = 1\nrange1 = 1, 2\nsteps1 = 2\n")),
      ConfigError);
}

TEST_CASE("cli: usage and config errors exit with code 2") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("eval") == 2);  // missing --field
  CHECK(run_cli("eval --field no-such-field") == 2);
  CHECK(run_cli("verify --suite no-such-suite") == 2);
  TempDir tmp;
  const std::string bad = tmp.file("bad.ini", "[grid]\nbogus = 1\n");
  CHECK(run_cli("--config " + bad + " --out " + (tmp / "o") + " solve") == 2);
  CHECK(run_cli("--out " + (tmp / "o") + " solve") == 2);  // no --config
}

TEST_CASE("cli: eval and invariants write CSVs and a manifest") {
  TempDir tmp;
  const std::string out = tmp / "out";
  CHECK(run_cli("--out " + out +
                " eval --field harmonic --param M=12.566 --nr 3 --ntheta 4") ==
        0);
  CHECK(fs::exists(fs::path(out) / "eval.csv"));
  CHECK(fs::exists(fs::path(out) / "manifest.json"));
  std::ifstream is(fs::path(out) / "eval.csv");
  std::string header;
  std::getline(is, header);
  CHECK(header == "r,theta,u1,u2,p");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 12);

  CHECK(run_cli("--out " + out +
                " invariants --field wake --param Fx=6.28 --param Fy=0 "
                "--radii 1000") == 0);
  CHECK(fs::exists(fs::path(out) / "invariants.csv"));
}

TEST_CASE("cli: solve on a coarse grid converges and round-trips") {
  TempDir tmp;
  const std::string cfgpath = tmp.file(
      "run.ini",
      "[grid]\nr_inner = 1\nr_outer = 100\nn_r = 49\nn_theta = 16\n"
      "[bc]\nc0 = -3.14159, 0\n");
  const std::string out = tmp / "out";
  CHECK(run_cli("--config " + cfgpath + " --out " + out + " solve") == 0);
  CHECK(fs::exists(fs::path(out) / "solution.bin"));
  CHECK(fs::exists(fs::path(out) / "solution.csv"));
  CHECK(run_cli("--out " + out + " analyze --solution " +
                (fs::path(out) / "solution.bin").string() +
                " --rmin 5 --rmax 50") == 0);
  CHECK(fs::exists(fs::path(out) / "profile.csv"));
  CHECK(fs::exists(fs::path(out) / "profile.svg"));
  CHECK(fs::exists(fs::path(out) / "analyze.json"));
  CHECK(run_cli("--out " + out + " plot --profile " +
                (fs::path(out) / "profile.csv").string()) == 0);
}

TEST_CASE("cli: coarse sweep emits the phase-map artifacts") {
  TempDir tmp;
  const std::string cfgpath = tmp.file(
      "sweep.ini",
      "[grid]\nr_inner = 1\nr_outer = 100\nn_r = 49\nn_theta = 16\n"
      "[sweep]\naxis1 = F\nvalues1 = 3.14159\naxis2 = M\nvalues2 = 0, 6.28\n"
      "fit_rmin = 5\nfit_rmax = 50\n");
  const std::string out = tmp / "out";
  CHECK(run_cli("--config " + cfgpath + " --out " + out + " sweep") == 0);
  CHECK(fs::exists(fs::path(out) / "phasemap.csv"));
  CHECK(fs::exists(fs::path(out) / "phasemap_exponent.svg"));
  CHECK(run_cli("--out " + out + " plot --phasemap " +
                (fs::path(out) / "phasemap.csv").string() +
                " --column exponent") == 0);
}
