#pragma once

// Run configuration, built-in experiment presets, run orchestration and CSV output.

#include "diagnostics.hpp"
#include "schemes.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fraclaw {

/// Declarative run description. Everything that defines the numerics lives in `spec`
/// (the JSON document), so a config can be dumped, edited and replayed.
struct RunConfig
{
  nlohmann::json spec;
  std::string out_dir; // empty: no files written
  bool strict_cfl = false;
  Index record_every = 0; // 0: every step up to 1000 steps, else a stride keeping <= 1000 records

  std::string name() const;
};

/// Numerical objects expanded from a RunConfig.
struct RunSetup
{
  GridSpec grid;
  SchemeConfig scheme;
  Vector initial;
  Index steps = 0;
};

RunSetup build_setup(RunConfig const &config);

/// Merge `overrides` into the preset (or a bare config) and validate.
RunConfig make_config(nlohmann::json const &document);

std::vector<std::string> preset_names();
nlohmann::json preset(std::string const &name);

struct RunReport
{
  std::string name;
  std::vector<DiagnosticsRecord> records;
  Vector x;
  Vector final_state;
  Index steps = 0;
  double final_time = 0.0;
  double tv0 = 0.0;
  double max_abs0 = 0.0;
  double tv_max = 0.0;      // over all steps, not only recorded ones
  double max_abs_max = 0.0; // idem
  Index total_sweeps = 0;
  Index max_sweeps = 0;
  Index cfl_violations = 0;
  Index max_principle_violations = 0;
  std::string status = "ok"; // ok | nan | sweep_failure
  double wall_seconds = 0.0;

  bool tv_bounded(double const tol = 1e-8) const { return status == "ok" && tv_max <= tv0 + tol; }
  double growth() const { return max_abs0 > 0.0 ? max_abs_max / max_abs0 : max_abs_max; }
};

struct RunOptions
{
  bool capture_failures = false; // record NaN / sweep failures in the report instead of throwing
  bool quiet = false;
};

RunReport run(RunConfig const &config, RunOptions const &opts = {});

enum struct SweepAxis
{
  Dt,
  Dx,
  Alpha
};

SweepAxis axis_from_string(std::string const &name);
std::string to_string(SweepAxis axis);

struct SweepRow
{
  double value = 0.0;
  RunReport report;
  bool stable = false;
  double cfl_tau_max = 0.0; // explicit schemes, from the initial data range
  std::optional<double> error; // dx/dt: l1 error against the reference run; alpha: l1 distance to alpha = 1
};

struct SweepResult
{
  SweepAxis axis;
  std::vector<SweepRow> rows;
  std::optional<double> slope; // log-log fit of error against value (dx, dt)
  std::vector<std::pair<double, double>> thresholds; // adjacent values where stability flips
};

SweepResult sweep(RunConfig const &base, SweepAxis axis, std::vector<double> const &values);

// CSV writers; numbers carry 17 significant digits.
void write_diagnostics_csv(std::string const &path, RunReport const &report);
void write_snapshot_csv(std::string const &path, RunReport const &report);
void write_sweep_csv(std::string const &path, SweepResult const &result);
void write_locus_csv(std::string const &path, std::vector<LocusPoint> const &curve);

} // namespace fraclaw
