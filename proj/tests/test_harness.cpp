#include "doctest.h"

#include "fraclaw/harness.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <algorithm>
#include <sys/wait.h>
#include <unistd.h>

using namespace fraclaw;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(std::string const &tag)
{
  auto const dir = fs::temp_directory_path() / ("fraclaw_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(fs::path const &p)
{
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int cli(std::string const &args, std::string const &env = {})
{
  std::string const cmd = env + (env.empty() ? "" : " ") + std::string(FRACLAW_CLI) + " " + args + " >/dev/null 2>&1";
  int const status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig quick(std::string const &name, json patch = json::object())
{
  patch["preset"] = name;
  return make_config(patch);
}

} // namespace

TEST_CASE("every preset expands into a valid setup")
{
  auto const names = preset_names();
  CHECK(names.size() >= 14);
  for (auto const &name : names) {
    CAPTURE(name);
    auto const cfg = quick(name);
    CHECK(cfg.name() == name);
    auto const setup = build_setup(cfg);
    CHECK(setup.steps > 0);
    CHECK(setup.initial.size() == setup.grid.cells);
    CHECK(setup.initial.allFinite());
  }
  CHECK_THROWS_AS(preset("no-such-preset"), ConfigError);
  CHECK_THROWS_AS(quick("no-such-preset"), ConfigError);
}

TEST_CASE("invalid configurations are rejected")
{
  auto bad = [](json patch) { return quick("advection-riemann", std::move(patch)); };
  CHECK_THROWS_AS(bad({{"scheme", "rk4"}}), ConfigError);
  CHECK_THROWS_AS(bad({{"dt", -0.1}}), ConfigError);
  CHECK_THROWS_AS(bad({{"alpha", 1.5}}), ConfigError);
  CHECK_THROWS_AS(bad({{"alpha", 0.0}}), ConfigError);
  CHECK_THROWS_AS(bad({{"boundary", "reflecting"}}), ConfigError);
  CHECK_THROWS_AS(bad({{"limiter", "superbee"}}), ConfigError);
  CHECK_THROWS_AS(bad({{"flux", {{"kind", "euler"}}}}), ConfigError);
  CHECK_THROWS_AS(bad({{"initial", {{"kind", "square"}}}}), ConfigError);
  CHECK_THROWS_AS(bad({{"grid", {{"x_left", 1.0}, {"x_right", -1.0}, {"h", 0.1}}}}), ConfigError);
  CHECK_THROWS_AS(bad({{"sweep_max", 0}}), ConfigError);
  CHECK_THROWS_AS(make_config(json::array()), ConfigError);
  CHECK_THROWS_AS(make_config(json{{"scheme", "explicit1"}}), ConfigError);
  CHECK_THROWS_AS(axis_from_string("dy"), ConfigError);
}

TEST_CASE("run report on Riemann advection")
{
  auto const cfg = quick("advection-riemann", {{"T", 0.05}});
  auto const r = run(cfg, {false, true});
  CHECK(r.status == "ok");
  CHECK(r.steps == 10);
  CHECK(r.final_time == doctest::Approx(0.05));
  CHECK(r.tv0 == doctest::Approx(1.0));
  CHECK(r.tv_bounded(1e-12));
  CHECK(r.max_abs0 == 2.0);
  CHECK(r.growth() <= 1.0 + 1e-12);
  CHECK(r.cfl_violations == 0);
  CHECK(r.max_principle_violations == 0);
  CHECK(r.records.size() == 11);
  CHECK(r.records.back().level == 10);
  CHECK(r.x.size() == r.final_state.size());
}

TEST_CASE("outputs are deterministic and replayable")
{
  auto const a = scratch("det_a"), b = scratch("det_b");
  auto cfg = quick("burgers-sine", {{"T", 0.05}});
  cfg.out_dir = a.string();
  run(cfg, {false, true});
  cfg.out_dir = b.string();
  run(cfg, {false, true});
  for (auto const *file : {"diagnostics.csv", "snapshot.csv", "config.json"}) {
    CAPTURE(file);
    REQUIRE(fs::exists(a / file));
    CHECK(slurp(a / file) == slurp(b / file));
  }
  auto const header = slurp(a / "diagnostics.csv").substr(0, 36);
  CHECK(header == "level,t,tv,l1,l2sq,entropy,min,max\n0");

  // config.json reproduces the run
  auto const replay = make_config(json::parse(slurp(a / "config.json")));
  CHECK(replay.spec == cfg.spec);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("failures are captured when asked")
{
  auto const cfg = quick("burgers-sine", {{"sweep_max", 1}, {"T", 0.02}});
  CHECK_THROWS_AS(run(cfg, {false, true}), ConvergenceError);
  auto const r = run(cfg, {true, true});
  CHECK(r.status == "sweep_failure");
  CHECK_FALSE(r.tv_bounded());

  auto const blow = quick("advection-riemann", {{"dt", 0.05}, {"T", 40.0}});
  auto const b = run(blow, {true, true});
  CHECK(b.status == "nan");
  CHECK(b.cfl_violations > 0);
}

TEST_CASE("dt sweep brackets the explicit stability threshold")
{
  auto const base = quick("advection-riemann", {{"T", 1.0}});
  auto const res = sweep(base, SweepAxis::Dt, {0.004, 0.005, 0.0065});
  REQUIRE(res.rows.size() == 3);
  CHECK(res.rows[0].stable);
  CHECK(res.rows[1].stable);
  CHECK_FALSE(res.rows[2].stable);
  CHECK(res.rows[0].cfl_tau_max == doctest::Approx(0.00522).epsilon(1e-3));
  REQUIRE(res.thresholds.size() == 1);
  CHECK(res.thresholds[0].first == 0.005);
  CHECK(res.thresholds[0].second == 0.0065);
}

TEST_CASE("dx sweep produces errors and a positive slope")
{
  auto const base = quick("convergence-explicit1", {{"T", 0.1}, {"grid", {{"x_left", -0.5}, {"x_right", 0.5}}}});
  auto const res = sweep(base, SweepAxis::Dx, {0.04, 0.02, 0.01});
  REQUIRE(res.slope);
  for (auto const &row : res.rows) {
    REQUIRE(row.error);
    CHECK(*row.error > 0.0);
  }
  CHECK(*res.rows[0].error < *res.rows[2].error); // rows ascend in h
  CHECK(*res.slope > 0.4);
}

TEST_CASE("alpha sweep measures distance to the classical run")
{
  auto const base = quick("alpha-family-advection", {{"T", 0.05}});
  auto const res = sweep(base, SweepAxis::Alpha, {0.3, 0.6, 1.0});
  REQUIRE(res.rows.size() == 3);
  REQUIRE(res.rows[2].error);
  CHECK(*res.rows[2].error == 0.0);
  CHECK(*res.rows[0].error > *res.rows[1].error);

  auto const dir = scratch("sweep");
  write_sweep_csv((dir / "sweep.csv").string(), res);
  CHECK(slurp(dir / "sweep.csv").rfind("alpha,", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("command line interface")
{
  auto const dir = scratch("cli");
  CHECK(cli("presets") == 0);
  CHECK(cli("presets --dump burgers-sine") == 0);
  CHECK(cli("presets --dump nope") == 2);

  auto const out = dir / "run";
  CHECK(cli("run --preset advection-riemann --out " + out.string()) == 0);
  CHECK(fs::exists(out / "diagnostics.csv"));
  CHECK(fs::exists(out / "snapshot.csv"));

  // environment overrides the config file, --out overrides both
  {
    std::ofstream cfg(dir / "c.json");
    cfg << json{{"preset", "advection-riemann"}, {"T", 0.01}, {"out", (dir / "from_file").string()}}.dump();
  }
  CHECK(cli("run --config " + (dir / "c.json").string(), "FRACLAW_OUTPUT_DIR=" + (dir / "from_env").string()) == 0);
  CHECK(fs::exists(dir / "from_env" / "snapshot.csv"));
  CHECK_FALSE(fs::exists(dir / "from_file"));
  CHECK(cli("run --config " + (dir / "c.json").string() + " --out " + (dir / "from_flag").string(),
            "FRACLAW_OUTPUT_DIR=" + (dir / "from_env2").string()) == 0);
  CHECK(fs::exists(dir / "from_flag" / "snapshot.csv"));
  CHECK_FALSE(fs::exists(dir / "from_env2"));
  CHECK(cli("run --config " + (dir / "c.json").string()) == 0);
  CHECK(fs::exists(dir / "from_file" / "snapshot.csv"));

  {
    std::ofstream broken(dir / "broken.json");
    broken << "{ \"preset\": ";
  }
  CHECK(cli("run --config " + (dir / "broken.json").string()) == 2);
  CHECK(cli("run --config " + (dir / "missing.json").string()) == 5);
  CHECK(cli("run") == 2);
  CHECK(cli("run --preset advection-riemann --strict-cfl") == 0);
  {
    std::ofstream c(dir / "fast.json");
    c << json{{"preset", "advection-riemann"}, {"dt", 0.01}, {"T", 0.02}}.dump();
  }
  CHECK(cli("run --config " + (dir / "fast.json").string() + " --strict-cfl") == 2);
  {
    std::ofstream c(dir / "nan.json");
    c << json{{"preset", "advection-riemann"}, {"dt", 0.05}, {"T", 40.0}}.dump();
  }
  CHECK(cli("run --config " + (dir / "nan.json").string()) == 3);
  {
    std::ofstream c(dir / "stuck.json");
    c << json{{"preset", "burgers-sine"}, {"sweep_max", 1}, {"T", 0.02}}.dump();
  }
  CHECK(cli("run --config " + (dir / "stuck.json").string()) == 4);
  {
    std::ofstream blocker(dir / "file");
    blocker << "x";
  }
  CHECK(cli("run --preset advection-riemann --out " + (dir / "file" / "sub").string()) == 5);

  CHECK(cli("locus --alpha 0.8 --n 10 --samples 64 --out " + (dir / "locus.csv").string()) == 0);
  auto const locus = slurp(dir / "locus.csv");
  CHECK(locus.rfind("theta,re_z,im_z\n", 0) == 0);
  CHECK(std::count(locus.begin(), locus.end(), '\n') == 65);
  CHECK(cli("locus --alpha 1.5 --n 10 --samples 64") == 2);
  CHECK(cli("locus --alpha 0.5 --n 10 --samples 4") == 2);

  CHECK(cli("sweep --preset advection-riemann --axis dt --values 0.004,0.0065") == 0);
  CHECK(cli("sweep --preset advection-riemann --axis dy --values 0.004") == 2);
  CHECK(cli("bogus") != 0);
  fs::remove_all(dir);
}
