#include "fraclaw/schemes.hpp"
#include "fraclaw/stability.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>

namespace fraclaw {

std::string to_string(SchemeKind const kind)
{
  switch (kind) {
  case SchemeKind::Explicit1: return "explicit1";
  case SchemeKind::Muscl: return "muscl";
  case SchemeKind::Implicit: return "implicit";
  }
  return "unknown";
}

SchemeKind scheme_from_string(std::string const &name)
{
  if (name == "explicit1") { return SchemeKind::Explicit1; }
  if (name == "muscl") { return SchemeKind::Muscl; }
  if (name == "implicit") { return SchemeKind::Implicit; }
  throw ConfigError("unknown scheme '" + name + "'");
}

void SchemeConfig::validate() const
{
  if (!(dt > 0.0)) { throw ConfigError("dt must be positive"); }
  if (!(sweep_tol > 0.0)) { throw ConfigError("sweep_tol must be positive"); }
  if (sweep_max < 1) { throw ConfigError("sweep_max must be >= 1"); }
  if (!flux.f_plus || !flux.f_minus || !flux.df_plus || !flux.df_minus || !flux.dfplus_bound || !flux.dfminus_bound) {
    throw ConfigError("flux model is incomplete");
  }
}

MemoryStep memory_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid)
{
  if (history.empty()) { throw DimensionError("history has no initial level"); }
  if (history.cells() != grid.cells) { throw DimensionError("history and grid disagree on the cell count"); }
  Index const level = history.levels();
  double const t_next = double(level) * cfg.dt;
  double const h = grid.h();
  MemoryStep m;
  m.alpha = cfg.alpha.sample(grid, t_next);
  if (cfg.alpha.is_constant()) {
    double const a = m.alpha[0];
    m.memory = caputo_memory(history, caputo_weights(a, level));
    m.delta = Vector::Constant(grid.cells, std::pow(cfg.dt, a) / (h * std::tgamma(2.0 - a)));
    return m;
  }
  m.memory.resize(grid.cells);
  m.delta.resize(grid.cells);
  for (Index j = 0; j < grid.cells; ++j) {
    double const a = m.alpha[j];
    auto const w = caputo_weights(a, level);
    m.memory[j] = history.cell(j).dot(w.weights.transpose());
    m.delta[j] = std::pow(cfg.dt, a) / (h * std::tgamma(2.0 - a));
  }
  return m;
}

namespace {

void require_finite(Vector const &u, Index const level)
{
  if (!u.allFinite()) { throw NumericalError("non-finite value in solution level " + std::to_string(level)); }
}

bool within_initial_range(Vector const &u, HistoryBuffer<double> const &history)
{
  auto const u0 = history.level(0);
  double const lo = u0.minCoeff(), hi = u0.maxCoeff();
  double const slack = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  return u.minCoeff() >= lo - slack && u.maxCoeff() <= hi + slack;
}

StepReport make_report(Vector const &u, HistoryBuffer<double> const &history, SchemeConfig const &cfg)
{
  StepReport r;
  r.level = history.levels();
  r.dt_used = cfg.dt;
  r.max_principle_ok = within_initial_range(u, history);
  return r;
}

} // namespace

std::pair<Vector, StepReport> explicit1_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid)
{
  auto const m = memory_step(history, cfg, grid);
  Index const n = grid.cells;
  Vector const p = padded(history.latest(), cfg.bc, 1);
  Vector fp(n + 2), fm(n + 2);
  for (Index i = 0; i < n + 2; ++i) {
    fp[i] = cfg.flux.f_plus(p[i]);
    fm[i] = cfg.flux.f_minus(p[i]);
  }
  // padded index of cell j is j+1
  Vector const diff = (fp.segment(1, n) - fp.segment(0, n)) + (fm.segment(2, n) - fm.segment(1, n));
  Vector u = m.memory - m.delta.cwiseProduct(diff);
  require_finite(u, history.levels());
  auto report = make_report(u, history, cfg);
  return {std::move(u), report};
}

std::pair<Vector, StepReport> muscl_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid)
{
  auto const m = memory_step(history, cfg, grid);
  Index const n = grid.cells;
  Vector const p = padded(history.latest(), cfg.bc, 2);
  Vector fp(n + 4), fm(n + 4);
  for (Index i = 0; i < n + 4; ++i) {
    fp[i] = cfg.flux.f_plus(p[i]);
    fm[i] = cfg.flux.f_minus(p[i]);
  }
  // Interface i sits at x_{j+1/2} with j = i-1, i = 0..n; cell j lives at padded index j+2.
  // f+ is reconstructed from the cell on the left, f- from the cell on the right.
  Vector plus(n + 1), minus(n + 1);
  for (Index i = 0; i <= n; ++i) {
    Index const c = i + 1; // padded index of cell j
    plus[i] = fp[c] + 0.5 * limited_increment(cfg.limiter, fp[c] - fp[c - 1], fp[c + 1] - fp[c]);
    minus[i] = fm[c + 1] - 0.5 * limited_increment(cfg.limiter, fm[c + 1] - fm[c], fm[c + 2] - fm[c + 1]);
  }
  Vector const diff = (plus.tail(n) - plus.head(n)) + (minus.tail(n) - minus.head(n));
  Vector u = m.memory - m.delta.cwiseProduct(diff);
  require_finite(u, history.levels());
  auto report = make_report(u, history, cfg);
  return {std::move(u), report};
}

namespace {

// Root of an increasing function by Newton steps kept inside a bracket. The bracket
// starts at start +- width and is widened until it changes sign.
template <typename G, typename DG> double increasing_root(G &&g, DG &&dg, double const start, double width)
{
  double u = start;
  double r = g(u);
  if (r == 0.0) { return u; }
  width = std::max({width, std::abs(r), 1e-14 * (1.0 + std::abs(start))});
  double lo = u, hi = u, rlo = r, rhi = r;
  for (int grow = 0; (r > 0.0 ? rlo > 0.0 : rhi < 0.0); ++grow, width *= 2.0) {
    if (grow > 200 || !std::isfinite(width)) { throw ConvergenceError("cell solve could not bracket its root", std::abs(r)); }
    if (r > 0.0) {
      hi = lo, rhi = rlo;
      lo = start - width, rlo = g(lo);
    } else {
      lo = hi, rlo = rhi;
      hi = start + width, rhi = g(hi);
    }
  }
  if (rlo == 0.0) { return lo; }
  if (rhi == 0.0) { return hi; }
  // start from the bracket end nearest the old value
  u = r > 0.0 ? hi : lo;
  r = r > 0.0 ? rhi : rlo;
  for (int it = 0; it < 300; ++it) {
    double next = u - r / dg(u);
    if (!(next > lo && next < hi)) { next = 0.5 * (lo + hi); }
    double const step = std::abs(next - u);
    u = next;
    r = g(u);
    if (r == 0.0) { return u; }
    if (r > 0.0) { hi = u; } else { lo = u; }
    if (step <= 1e-14 * (1.0 + std::abs(u)) || hi - lo <= 1e-14 * (1.0 + std::abs(u))) { return u; }
  }
  throw ConvergenceError("cell solve did not converge", std::abs(r));
}

// One cell of the implicit system: u + d sp f+(u) - d sm f-(u) = rhs.
// sp / sm switch off the self-cancelling terms at outflow boundaries.
struct CellEquation
{
  FluxModel const *flux;
  double d;
  bool sp, sm;

  double lhs(double u) const
  {
    double v = u;
    if (sp) { v += d * flux->f_plus(u); }
    if (sm) { v -= d * flux->f_minus(u); }
    return v;
  }
  double slope(double u) const // >= 1
  {
    double v = 1.0;
    if (sp) { v += d * flux->df_plus(u); }
    if (sm) { v -= d * flux->df_minus(u); }
    return v;
  }
  double solve(double rhs, double start) const
  {
    double const r = lhs(start) - rhs;
    // slope >= 1 puts the root within |r| of the start
    return increasing_root([&](double u) { return lhs(u) - rhs; }, [&](double u) { return slope(u); }, start, std::abs(r));
  }
};

} // namespace

std::pair<Vector, StepReport> implicit_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid)
{
  auto const m = memory_step(history, cfg, grid);
  Index const n = grid.cells;
  auto const &flux = cfg.flux;
  auto const &bc = cfg.bc;
  Vector u = history.latest();
  bool const outflow = bc.kind == BoundaryKind::Outflow;
  bool const periodic = bc.kind == BoundaryKind::Periodic;

  // Neighbours taken from the current iterate; ghosts follow the boundary treatment.
  auto left_of = [&](Index j) {
    if (j > 0) { return u[j - 1]; }
    return periodic ? u[n - 1] : bc.left_value;
  };
  auto right_of = [&](Index j) {
    if (j < n - 1) { return u[j + 1]; }
    return periodic ? u[0] : bc.right_value;
  };
  auto cell = [&](Index j) { return CellEquation{&flux, m.delta[j], !(outflow && j == 0), !(outflow && j == n - 1)}; };
  auto rhs_of = [&](CellEquation const &e, Index j, double left, double right) {
    double rhs = m.memory[j];
    if (e.sp) { rhs += e.d * flux.f_plus(left); }
    if (e.sm) { rhs -= e.d * flux.f_minus(right); }
    return rhs;
  };
  auto update = [&](Index j) {
    auto const e = cell(j);
    double const next = e.solve(rhs_of(e, j, left_of(j), right_of(j)), u[j]);
    double const change = std::abs(next - u[j]);
    u[j] = next;
    return change;
  };
  // Cells j, j+1 with u_j > 0 > u_{j+1} feed each other; sweeping them one at a time
  // contracts slowly when delta is large, so they are solved together: for a trial u_j
  // the right cell is solved exactly, and the left residual is then increasing in u_j.
  // k = j + 1, wrapping for periodic data
  auto sonic_pair = [&](Index j) {
    Index const k = j + 1 < n ? j + 1 : (periodic && n > 2 ? 0 : -1);
    return k >= 0 && u[j] > 0.0 && u[k] < 0.0 && flux.df_plus(u[j]) > 0.0 && flux.df_minus(u[k]) < 0.0;
  };
  auto update_pair = [&](Index j) {
    Index const k = (j + 1) % n;
    auto const el = cell(j), er = cell(k);
    double const outer_left = left_of(j), outer_right = right_of(k);
    double y = u[k];
    auto right_given = [&](double x) {
      y = er.solve(rhs_of(er, k, x, outer_right), y);
      return y;
    };
    auto g = [&](double x) { return el.lhs(x) - rhs_of(el, j, outer_left, right_given(x)); };
    auto dg = [&](double x) {
      // dy/dx from the right cell, implicit differentiation
      double const dy = er.d * flux.df_plus(x) / er.slope(y);
      return el.slope(x) + el.d * flux.df_minus(y) * dy;
    };
    double const x0 = u[j];
    double const r0 = g(x0);
    double const x = increasing_root(g, dg, x0, std::abs(r0));
    double const yx = right_given(x);
    double const change = std::max(std::abs(x - u[j]), std::abs(yx - u[k]));
    u[j] = x;
    u[k] = yx;
    return change;
  };
  auto residuals = [&]() {
    Vector res(n);
    for (Index j = 0; j < n; ++j) {
      auto const e = cell(j);
      res[j] = e.lhs(u[j]) - rhs_of(e, j, left_of(j), right_of(j));
    }
    return res;
  };
  auto residual = [&]() { return residuals().cwiseAbs().maxCoeff(); };

  // Newton on the whole system, for couplings that sweeping resolves slowly (chiefly the
  // wrap-around of periodic data). All or nothing: kept only if it reaches a root.
  auto newton = [&](double const tol) {
    Vector const keep = u;
    Eigen::SparseMatrix<double> J(n, n);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    std::vector<Eigen::Triplet<double>> jac;
    Vector res = residuals();
    double merit = res.squaredNorm();
    for (int it = 0; it < 50; ++it) {
      if (res.cwiseAbs().maxCoeff() <= tol) { return true; }
      jac.clear();
      for (Index j = 0; j < n; ++j) {
        auto const e = cell(j);
        jac.emplace_back(j, j, e.slope(u[j]));
        if (e.sp && (j > 0 || periodic)) { jac.emplace_back(j, j > 0 ? j - 1 : n - 1, -e.d * flux.df_plus(left_of(j))); }
        if (e.sm && (j < n - 1 || periodic)) { jac.emplace_back(j, j < n - 1 ? j + 1 : 0, e.d * flux.df_minus(right_of(j))); }
      }
      J.setFromTriplets(jac.begin(), jac.end());
      lu.compute(J);
      if (lu.info() != Eigen::Success) { break; }
      Vector const step = lu.solve(res);
      if (lu.info() != Eigen::Success || !step.allFinite()) { break; }
      Vector const base = u;
      bool moved = false;
      for (double scale = 1.0; scale > 1e-6 && !moved; scale *= 0.5) {
        u = base - scale * step;
        Vector const trial = residuals();
        if (trial.squaredNorm() < merit) {
          res = trial;
          merit = trial.squaredNorm();
          moved = true;
        }
      }
      if (!moved) { break; }
    }
    u = keep;
    return false;
  };

  Index sweeps = 0;
  bool converged = false;
  int newton_tries = 0;
  double previous = INFINITY;
  while (sweeps < cfg.sweep_max) {
    double const tol = cfg.sweep_tol * (1.0 + u.cwiseAbs().maxCoeff());
    double change = 0.0;
    if (sweeps % 2 == 0) {
      for (Index j = 0; j < n; ++j) {
        if (sonic_pair(j)) {
          change = std::max(change, update_pair(j));
          ++j;
        } else {
          change = std::max(change, update(j));
        }
      }
    } else {
      for (Index j = n - 1; j >= 0; --j) {
        if (j == 0 && sonic_pair(n - 1)) {
          change = std::max(change, update_pair(n - 1));
        } else if (j > 0 && sonic_pair(j - 1)) {
          change = std::max(change, update_pair(j - 1));
          --j;
        } else {
          change = std::max(change, update(j));
        }
      }
    }
    ++sweeps;
    if (!std::isfinite(change)) { break; }
    if (change < tol) {
      converged = true;
      break;
    }
    // slow contraction over a pair of passes: try a global Newton solve, a few times at most
    if (newton_tries < 4 && sweeps >= 4 && sweeps % 2 == 0 && change > 0.1 * previous) {
      ++newton_tries;
      newton(0.1 * tol);
    }
    if (sweeps % 2 == 0) { previous = change; }
  }
  if (!converged) {
    double const res = residual();
    throw ConvergenceError("implicit sweeps did not converge in " + std::to_string(cfg.sweep_max) + " sweeps (residual " +
                             std::to_string(res) + ")",
                           res);
  }
  require_finite(u, history.levels());
  auto report = make_report(u, history, cfg);
  report.sweeps_used = sweeps;
  report.residual = residual();
  return {std::move(u), report};
}

std::pair<Vector, StepReport> scheme_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid)
{
  switch (cfg.scheme) {
  case SchemeKind::Explicit1: return explicit1_step(history, cfg, grid);
  case SchemeKind::Muscl: return muscl_step(history, cfg, grid);
  case SchemeKind::Implicit: return implicit_step(history, cfg, grid);
  }
  throw ConfigError("unknown scheme");
}

Vector fode_backward_euler(double const alpha, double const lambda, double const u0, double const dt, Index const steps)
{
  check_alpha(alpha);
  if (!(dt > 0.0)) { throw DomainError("dt must be positive"); }
  if (steps < 0) { throw DomainError("steps must be nonnegative"); }
  double const denom = 1.0 - lambda * caputo_scale(alpha, dt);
  if (denom == 0.0) { throw ConfigError("fractional backward Euler is singular: 1 - lambda Gamma(2-alpha) tau^alpha = 0"); }
  HistoryBuffer<double> history(1, dt, steps + 1);
  history.append(Vector::Constant(1, u0));
  for (Index n = 0; n < steps; ++n) {
    double const mem = caputo_memory_term(history, caputo_weights(alpha, history.levels()), 0);
    history.append(Vector::Constant(1, mem / denom));
  }
  return history.cell(0).transpose();
}

CflBound explicit_cfl(Eigen::Ref<Vector const> const &state, SchemeConfig const &cfg, GridSpec const &grid, double const t_next)
{
  int const order = cfg.scheme == SchemeKind::Muscl ? 2 : 1;
  double const speed = cfg.flux.speed_sum(state.minCoeff(), state.maxCoeff());
  Vector const a = cfg.alpha.sample(grid, t_next);
  CflBound worst = cfl_max_dt(a[0], grid.h(), speed, order);
  if (!cfg.alpha.is_constant()) {
    for (Index j = 1; j < a.size(); ++j) {
      auto const b = cfl_max_dt(a[j], grid.h(), speed, order);
      if (b.tau_max < worst.tau_max) { worst = b; }
    }
  }
  return worst;
}

Solver::Solver(GridSpec grid, SchemeConfig cfg, Vector initial, Options opts, Index const reserve_levels)
  : grid_(std::move(grid))
  , cfg_(std::move(cfg))
  , opts_(std::move(opts))
  , history_(grid_.cells, cfg_.dt, reserve_levels)
{
  cfg_.validate();
  if (initial.size() != grid_.cells) { throw DimensionError("initial data does not match the grid"); }
  if (!initial.allFinite()) { throw NumericalError("non-finite initial data"); }
  if (cfg_.bc.kind == BoundaryKind::DirichletFromInitial) { cfg_.bc.freeze(initial); }
  history_.append(initial);
}

StepReport Solver::step()
{
  bool cfl_ok = true;
  if (cfg_.scheme != SchemeKind::Implicit) {
    double const t_next = double(history_.levels()) * cfg_.dt;
    auto const bound = explicit_cfl(history_.latest(), cfg_, grid_, t_next);
    cfl_ok = bound.admits(cfg_.dt);
    if (!cfl_ok) {
      std::string const msg = "dt = " + std::to_string(cfg_.dt) + " exceeds the CFL bound " + std::to_string(bound.tau_max) +
                              " at level " + std::to_string(history_.levels());
      if (opts_.strict_cfl) { throw ConfigError(msg); }
      if (!warned_ && opts_.warn) { opts_.warn(msg); }
      warned_ = true;
    } else {
      warned_ = false;
    }
  }
  auto [u, report] = scheme_step(history_, cfg_, grid_);
  report.cfl_ok = cfl_ok;
  history_.append(u);
  return report;
}

} // namespace fraclaw
