#pragma once

// Time steppers for D_t^alpha u + f(u)_x = 0 on a uniform grid:
//   explicit first-order upwind, explicit MUSCL with flux limiting,
//   implicit upwind solved by alternating nonlinear Gauss-Seidel sweeps,
// plus the fractional backward Euler method for D_t^alpha u = lambda u.
//
// Every step consumes the full history: the update at cell j is built on the
// memory term sum_k c_k(alpha_j) U_j^k with alpha_j = alpha(x_j, t^{n+1}).

#include "caputo.hpp"
#include "flux.hpp"
#include "mesh.hpp"
#include "stability.hpp"
#include "types.hpp"

#include <functional>
#include <string>
#include <utility>

namespace fraclaw {

enum struct SchemeKind
{
  Explicit1,
  Muscl,
  Implicit
};

std::string to_string(SchemeKind kind);
SchemeKind scheme_from_string(std::string const &name);

struct SchemeConfig
{
  SchemeKind scheme = SchemeKind::Implicit;
  Limiter limiter = Limiter::Minmod;
  double dt = 0.01;
  FluxModel flux = linear_advection(1.0);
  AlphaField alpha{1.0};
  BoundaryTreatment bc{};
  double sweep_tol = 1e-12; // scaled by (1 + |U|_inf)
  Index sweep_max = 100;

  void validate() const;
};

struct StepReport
{
  Index level = 0;
  Index sweeps_used = 0;
  bool max_principle_ok = true;
  bool cfl_ok = true;
  double dt_used = 0.0;
  double residual = 0.0;
};

/// Memory term and per-cell coefficients for the step producing level history.levels().
struct MemoryStep
{
  Vector alpha;  // alpha_j at (x_j, t^{n+1})
  Vector memory; // sum_k c_k(alpha_j) U_j^k
  Vector delta;  // tau^alpha_j / (h Gamma(2 - alpha_j))
};

MemoryStep memory_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid);

std::pair<Vector, StepReport> explicit1_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid);
std::pair<Vector, StepReport> muscl_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid);
std::pair<Vector, StepReport> implicit_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid);

std::pair<Vector, StepReport> scheme_step(HistoryBuffer<double> const &history, SchemeConfig const &cfg, GridSpec const &grid);

/// Levels U^0 ... U^steps of (1 - lambda Gamma(2-alpha) tau^alpha) U^{n+1} = sum_k c_k U^k.
Vector fode_backward_euler(double alpha, double lambda, double u0, double dt, Index steps);

/// Smallest explicit CFL bound over the cells, using the flux speeds on the current solution range.
CflBound explicit_cfl(Eigen::Ref<Vector const> const &state, SchemeConfig const &cfg, GridSpec const &grid, double t_next);

struct SolverOptions
{
  bool strict_cfl = false;
  std::function<void(std::string const &)> warn; // called once per CFL violation episode
};

/// Owns the history of one run and advances it.
class Solver
{
public:
  using Options = SolverOptions;

  Solver(GridSpec grid, SchemeConfig cfg, Vector initial, Options opts = {}, Index reserve_levels = 64);

  StepReport step();

  HistoryBuffer<double> const &history() const { return history_; }
  GridSpec const &grid() const { return grid_; }
  SchemeConfig const &config() const { return cfg_; }
  Index level() const { return history_.levels() - 1; }
  double time() const { return double(level()) * cfg_.dt; }
  auto current() const { return history_.latest(); }

private:
  GridSpec grid_;
  SchemeConfig cfg_;
  Options opts_;
  HistoryBuffer<double> history_;
  bool warned_ = false;
};

} // namespace fraclaw
