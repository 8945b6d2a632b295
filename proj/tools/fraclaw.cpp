// fraclaw: command-line driver for the fractional conservation-law solvers.
//
//   fraclaw run    --config <file> [--preset <name>] [--out <dir>] [--strict-cfl]
//   fraclaw sweep  --config <file> [--preset <name>] --axis <dt|dx|alpha> --values <v1,v2,...> [--out <dir>]
//   fraclaw locus  --alpha <a> --n <levels> --samples <k> [--out <file>]
//   fraclaw presets [--dump <name>]
//
// FRACLAW_OUTPUT_DIR overrides the output directory of the config file; --out overrides both.

#include "fraclaw/harness.hpp"
#include "fraclaw/stability.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

enum ExitCode : int
{
  Ok = 0,
  Failure = 1,
  BadConfig = 2,
  NumericalAbort = 3,
  SweepFailure = 4,
  Io = 5,
};

nlohmann::json load_document(std::string const &path, std::string const &preset)
{
  nlohmann::json doc = nlohmann::json::object();
  if (!path.empty()) {
    std::ifstream is(path);
    if (!is) { throw fraclaw::IoError("cannot read config " + path); }
    try {
      doc = nlohmann::json::parse(is);
    } catch (nlohmann::json::exception const &e) {
      throw fraclaw::ConfigError("cannot parse " + path + ": " + e.what());
    }
  }
  if (!preset.empty()) { doc["preset"] = preset; }
  if (!doc.contains("preset") && path.empty()) { throw fraclaw::ConfigError("either --config or --preset is required"); }
  return doc;
}

fraclaw::RunConfig resolve(std::string const &path, std::string const &preset, std::string const &out, bool strict)
{
  auto cfg = fraclaw::make_config(load_document(path, preset));
  if (char const *env = std::getenv("FRACLAW_OUTPUT_DIR"); env && *env) { cfg.out_dir = env; }
  if (!out.empty()) { cfg.out_dir = out; }
  if (strict) { cfg.strict_cfl = true; }
  return cfg;
}

void print_report(fraclaw::RunReport const &r)
{
  std::cout << std::setprecision(17);
  std::cout << "run " << r.name << ": status " << r.status << ", " << r.steps << " steps to t = " << r.final_time << '\n';
  std::cout << "  TV0 = " << r.tv0 << ", max TV = " << r.tv_max << ", final TV = " << r.records.back().tv << '\n';
  std::cout << "  max |u| = " << r.max_abs_max << " (initial " << r.max_abs0 << ")\n";
  std::cout << "  CFL violations = " << r.cfl_violations << ", max-principle violations = " << r.max_principle_violations
            << ", sweeps total/max = " << r.total_sweeps << '/' << r.max_sweeps << '\n';
  std::cout << "  wall time = " << std::setprecision(4) << r.wall_seconds << " s\n";
}

std::vector<double> parse_values(std::string const &list)
{
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) { continue; }
    try {
      values.push_back(std::stod(item));
    } catch (std::exception const &) {
      throw fraclaw::ConfigError("bad sweep value '" + item + "'");
    }
  }
  return values;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Finite-volume solvers for conservation laws with a Caputo time derivative"};
  app.require_subcommand(1);

  std::string config, preset, out, axis, values, dump;
  bool strict = false;
  double alpha = 0.8;
  long levels = 10, samples = 256;

  auto *run_cmd = app.add_subcommand("run", "Run one configuration");
  run_cmd->add_option("--config", config, "JSON config file");
  run_cmd->add_option("--preset", preset, "Built-in preset name");
  run_cmd->add_option("--out", out, "Output directory");
  run_cmd->add_flag("--strict-cfl", strict, "Abort when an explicit step violates its CFL bound");

  auto *sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep_cmd->add_option("--config", config, "JSON config file");
  sweep_cmd->add_option("--preset", preset, "Built-in preset name");
  sweep_cmd->add_option("--axis", axis, "dt, dx or alpha")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
  sweep_cmd->add_option("--out", out, "Output directory");

  auto *locus_cmd = app.add_subcommand("locus", "Boundary locus of the fractional backward Euler method");
  locus_cmd->add_option("--alpha", alpha, "Fractional order in (0,1]")->required();
  locus_cmd->add_option("--n", levels, "History length n")->required();
  locus_cmd->add_option("--samples", samples, "Number of theta samples")->required();
  locus_cmd->add_option("--out", out, "CSV file (default: stdout)");

  auto *presets_cmd = app.add_subcommand("presets", "List presets or dump one as JSON");
  presets_cmd->add_option("--dump", dump, "Preset to print");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      auto const cfg = resolve(config, preset, out, strict);
      auto const report = fraclaw::run(cfg);
      print_report(report);
      if (!cfg.out_dir.empty()) { std::cout << "  output: " << cfg.out_dir << '\n'; }
    } else if (sweep_cmd->parsed()) {
      auto const cfg = resolve(config, preset, out, false);
      auto const result = fraclaw::sweep(cfg, fraclaw::axis_from_string(axis), parse_values(values));
      std::cout << std::setprecision(17);
      std::cout << axis << ",status,stable,tv_max,growth,cfl_tau_max,error\n";
      for (auto const &row : result.rows) {
        std::cout << row.value << ',' << row.report.status << ',' << row.stable << ',' << row.report.tv_max << ',' << row.report.growth()
                  << ',' << row.cfl_tau_max << ',';
        if (row.error) { std::cout << *row.error; }
        std::cout << '\n';
      }
      if (result.slope) { std::cout << "fitted slope: " << *result.slope << '\n'; }
      for (auto const &[a, b] : result.thresholds) {
        std::cout << "stability changes between " << a << " and " << b << '\n';
      }
    } else if (locus_cmd->parsed()) {
      auto const curve = fraclaw::boundary_locus(alpha, levels, samples);
      if (!out.empty()) {
        fraclaw::write_locus_csv(out, curve);
      } else {
        std::cout << std::setprecision(17) << "theta,re_z,im_z\n";
        for (auto const &p : curve) {
          std::cout << p.theta << ',' << p.z.real() << ',' << p.z.imag() << '\n';
        }
      }
    } else if (presets_cmd->parsed()) {
      if (!dump.empty()) {
        std::cout << fraclaw::preset(dump).dump(2) << '\n';
      } else {
        for (auto const &name : fraclaw::preset_names()) {
          std::cout << name << '\n';
        }
      }
    }
  } catch (fraclaw::ConfigError const &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return BadConfig;
  } catch (fraclaw::DomainError const &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return BadConfig;
  } catch (fraclaw::NumericalError const &e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return NumericalAbort;
  } catch (fraclaw::ConvergenceError const &e) {
    std::cerr << "sweep failure: " << e.what() << '\n';
    return SweepFailure;
  } catch (fraclaw::IoError const &e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return Io;
  } catch (std::filesystem::filesystem_error const &e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return Io;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return Failure;
  }
  return Ok;
}
