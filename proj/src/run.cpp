#include "fraclaw/harness.hpp"
#include "fraclaw/stability.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fraclaw {

using nlohmann::json;

namespace {

std::ofstream open_csv(std::string const &path)
{
  auto const parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) { std::filesystem::create_directories(parent, ec); }
  if (ec) { throw IoError("cannot create directory " + parent.string() + ": " + ec.message()); }
  std::ofstream os(path);
  if (!os) { throw IoError("cannot open " + path + " for writing"); }
  os << std::setprecision(17);
  return os;
}

void close_csv(std::ofstream &os, std::string const &path)
{
  os.close();
  if (!os) { throw IoError("failed writing " + path); }
}

Index record_stride(Index const requested, Index const steps)
{
  if (requested > 0) { return requested; }
  return steps <= 1000 ? 1 : (steps + 999) / 1000;
}

std::string value_tag(double v)
{
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

} // namespace

RunReport run(RunConfig const &config, RunOptions const &opts)
{
  auto const start = std::chrono::steady_clock::now();
  RunSetup setup = build_setup(config);
  Solver::Options sopts;
  sopts.strict_cfl = config.strict_cfl;
  if (!opts.quiet) {
    sopts.warn = [name = config.name()](std::string const &msg) { std::cerr << "warning [" << name << "]: " << msg << '\n'; };
  }
  double const h = setup.grid.h();
  Solver solver(setup.grid, setup.scheme, setup.initial, sopts, setup.steps + 1);

  RunReport report;
  report.name = config.name();
  report.x = setup.grid.nodes();
  report.tv0 = total_variation(setup.initial);
  report.max_abs0 = setup.initial.cwiseAbs().maxCoeff();
  report.tv_max = report.tv0;
  report.max_abs_max = report.max_abs0;
  report.records.push_back(diagnose(setup.initial, 0, 0.0, h));

  Index const stride = record_stride(config.record_every, setup.steps);
  try {
    for (Index n = 1; n <= setup.steps; ++n) {
      auto const step = solver.step();
      auto const u = solver.current();
      report.tv_max = std::max(report.tv_max, total_variation(u));
      report.max_abs_max = std::max(report.max_abs_max, u.cwiseAbs().maxCoeff());
      report.total_sweeps += step.sweeps_used;
      report.max_sweeps = std::max(report.max_sweeps, step.sweeps_used);
      report.cfl_violations += step.cfl_ok ? 0 : 1;
      report.max_principle_violations += step.max_principle_ok ? 0 : 1;
      if (n % stride == 0 || n == setup.steps) { report.records.push_back(diagnose(u, n, solver.time(), h)); }
    }
  } catch (NumericalError const &) {
    if (!opts.capture_failures) { throw; }
    report.status = "nan";
  } catch (ConvergenceError const &) {
    if (!opts.capture_failures) { throw; }
    report.status = "sweep_failure";
  }
  report.steps = solver.level();
  report.final_time = solver.time();
  report.final_state = solver.current();
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!config.out_dir.empty()) {
    write_diagnostics_csv(config.out_dir + "/diagnostics.csv", report);
    write_snapshot_csv(config.out_dir + "/snapshot.csv", report);
    std::ofstream cfg(config.out_dir + "/config.json");
    cfg << config.spec.dump(2) << '\n';
    if (!cfg) { throw IoError("failed writing " + config.out_dir + "/config.json"); }
  }
  return report;
}

SweepAxis axis_from_string(std::string const &name)
{
  if (name == "dt") { return SweepAxis::Dt; }
  if (name == "dx") { return SweepAxis::Dx; }
  if (name == "alpha") { return SweepAxis::Alpha; }
  throw ConfigError("unknown sweep axis '" + name + "' (expected dt, dx or alpha)");
}

std::string to_string(SweepAxis const axis)
{
  switch (axis) {
  case SweepAxis::Dt: return "dt";
  case SweepAxis::Dx: return "dx";
  case SweepAxis::Alpha: return "alpha";
  }
  return "unknown";
}

namespace {

RunConfig with_value(RunConfig const &base, SweepAxis const axis, double const v, std::string const &suffix)
{
  RunConfig c = base;
  switch (axis) {
  case SweepAxis::Dt: c.spec["dt"] = v; break;
  case SweepAxis::Dx:
    c.spec["grid"].erase("nodes");
    c.spec["grid"]["h"] = v;
    break;
  case SweepAxis::Alpha: c.spec["alpha"] = v; break;
  }
  c.spec["name"] = base.name() + "/" + to_string(axis) + "=" + suffix;
  if (!base.out_dir.empty()) { c.out_dir = base.out_dir + "/" + to_string(axis) + "_" + suffix; }
  return c;
}

} // namespace

SweepResult sweep(RunConfig const &base, SweepAxis const axis, std::vector<double> const &values)
{
  if (values.empty()) { throw ConfigError("sweep needs at least one value"); }
  SweepResult result{axis, {}, std::nullopt, {}};
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());

  RunOptions opts;
  opts.capture_failures = true;
  opts.quiet = true;

  // Independent runs share nothing; launch them together.
  std::vector<std::future<RunReport>> jobs;
  for (double const v : sorted) {
    auto cfg = with_value(base, axis, v, value_tag(v));
    build_setup(cfg);
    jobs.push_back(std::async(std::launch::async, [cfg, opts] { return run(cfg, opts); }));
  }

  std::optional<RunReport> reference;
  double const finest = sorted.front();
  if (axis == SweepAxis::Dx || axis == SweepAxis::Dt) {
    RunConfig ref = with_value(base, axis, finest / 8.0, "reference");
    reference = run(ref, opts);
  } else {
    auto const one = std::find(sorted.begin(), sorted.end(), 1.0);
    if (one == sorted.end()) { reference = run(with_value(base, axis, 1.0, "reference"), opts); }
  }

  for (std::size_t i = 0; i < sorted.size(); ++i) {
    SweepRow row;
    row.value = sorted[i];
    row.report = jobs[i].get();
    auto const setup = build_setup(with_value(base, axis, row.value, "probe"));
    row.stable = row.report.tv_bounded() && row.report.growth() < 10.0;
    if (setup.scheme.scheme != SchemeKind::Implicit) {
      row.cfl_tau_max = explicit_cfl(setup.initial, setup.scheme, setup.grid, setup.scheme.dt).tau_max;
    }
    result.rows.push_back(std::move(row));
  }
  if (axis == SweepAxis::Alpha && !reference) {
    for (auto const &r : result.rows) {
      if (r.value == 1.0) { reference = r.report; }
    }
  }

  if (reference && reference->status == "ok") {
    for (auto &row : result.rows) {
      if (row.report.status != "ok") { continue; }
      double const h = row.report.x.size() > 1 ? row.report.x[1] - row.report.x[0] : 1.0;
      if (axis == SweepAxis::Dx) {
        row.error = nested_l1_error(row.report.final_state, reference->final_state, h);
      } else {
        row.error = h * l1_distance(row.report.final_state, reference->final_state);
      }
    }
  }
  if (axis != SweepAxis::Alpha) {
    std::vector<std::pair<double, double>> pts;
    for (auto const &row : result.rows) {
      if (row.error && *row.error > 0.0 && row.stable) { pts.emplace_back(row.value, *row.error); }
    }
    if (pts.size() >= 3) { result.slope = convergence_slope(pts); }
  }
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    if (result.rows[i - 1].stable != result.rows[i].stable) {
      result.thresholds.emplace_back(result.rows[i - 1].value, result.rows[i].value);
    }
  }
  if (!base.out_dir.empty()) { write_sweep_csv(base.out_dir + "/sweep_" + to_string(axis) + ".csv", result); }
  return result;
}

void write_diagnostics_csv(std::string const &path, RunReport const &report)
{
  auto os = open_csv(path);
  os << "level,t,tv,l1,l2sq,entropy,min,max\n";
  for (auto const &r : report.records) {
    os << r.level << ',' << r.t << ',' << r.tv << ',' << r.l1_norm << ',' << r.l2_norm_sq << ',' << r.entropy_l2 << ',' << r.min_val
       << ',' << r.max_val << '\n';
  }
  close_csv(os, path);
}

void write_snapshot_csv(std::string const &path, RunReport const &report)
{
  auto os = open_csv(path);
  os << "x,u\n";
  for (Index j = 0; j < report.final_state.size(); ++j) {
    os << report.x[j] << ',' << report.final_state[j] << '\n';
  }
  close_csv(os, path);
}

void write_sweep_csv(std::string const &path, SweepResult const &result)
{
  auto os = open_csv(path);
  os << to_string(result.axis) << ",status,steps,tv0,tv_max,growth,stable,cfl_tau_max,error\n";
  for (auto const &row : result.rows) {
    os << row.value << ',' << row.report.status << ',' << row.report.steps << ',' << row.report.tv0 << ',' << row.report.tv_max << ','
       << row.report.growth() << ',' << (row.stable ? 1 : 0) << ',' << row.cfl_tau_max << ',';
    if (row.error) { os << *row.error; }
    os << '\n';
  }
  close_csv(os, path);
}

void write_locus_csv(std::string const &path, std::vector<LocusPoint> const &curve)
{
  auto os = open_csv(path);
  os << "theta,re_z,im_z\n";
  for (auto const &p : curve) {
    os << p.theta << ',' << p.z.real() << ',' << p.z.imag() << '\n';
  }
  close_csv(os, path);
}

} // namespace fraclaw
