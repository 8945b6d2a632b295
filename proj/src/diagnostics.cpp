#include "fraclaw/diagnostics.hpp"

#include <cmath>
#include <string>

namespace fraclaw {

DiagnosticsRecord diagnose(Eigen::Ref<Vector const> const &u, Index const level, double const t, double const h)
{
  DiagnosticsRecord r;
  r.level = level;
  r.t = t;
  r.tv = total_variation(u);
  r.l1_norm = h * u.cwiseAbs().sum();
  r.entropy_l2 = u.squaredNorm();
  r.l2_norm_sq = h * r.entropy_l2;
  r.min_val = u.minCoeff();
  r.max_val = u.maxCoeff();
  return r;
}

std::vector<EnergyLedgerEntry> energy_decomposition(HistoryBuffer<double> const &history, double const alpha, double const lambda,
                                                    BoundaryTreatment const &bc, double const rtol)
{
  std::vector<EnergyLedgerEntry> ledger;
  Index const levels = history.levels();
  Index const m = history.cells();
  Vector norms(levels);
  for (Index k = 0; k < levels; ++k) {
    norms[k] = history.level(k).squaredNorm();
  }
  for (Index n1 = 1; n1 < levels; ++n1) {
    auto const w = caputo_weights(alpha, n1);
    Vector const u = history.level(n1);
    EnergyLedgerEntry e;
    e.level = n1;
    e.norm_sq = norms[n1];
    for (Index k = 0; k < n1; ++k) {
      e.memory_damping += w.weights[k] * (u - history.level(k)).squaredNorm();
    }
    double const ghost = ghost_values(u, bc, Side::Left, 1)[0];
    double diss = (u[0] - ghost) * (u[0] - ghost);
    diss += (u.tail(m - 1) - u.head(m - 1)).squaredNorm();
    e.upwind_dissipation = lambda * diss;
    e.boundary_flux = lambda * (u[m - 1] * u[m - 1] - ghost * ghost);
    e.history_energy = w.weights.dot(norms.head(n1));
    double const lhs = e.norm_sq + e.memory_damping + e.upwind_dissipation + e.boundary_flux;
    e.relative_residual = std::abs(lhs - e.history_energy) / std::max(e.history_energy, 1e-300);
    if (e.relative_residual > rtol) {
      throw NumericalError("energy identity violated at level " + std::to_string(n1) + ": relative residual " +
                           std::to_string(e.relative_residual));
    }
    ledger.push_back(e);
  }
  return ledger;
}

double convergence_slope(std::vector<std::pair<double, double>> const &points)
{
  if (points.size() < 3) { throw DomainError("convergence_slope needs at least 3 points"); }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto const &[res, err] : points) {
    if (!(res > 0.0) || !(err > 0.0)) { throw DomainError("convergence_slope needs positive resolutions and errors"); }
    double const x = std::log(res), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double const n = double(points.size());
  double const denom = n * sxx - sx * sx;
  if (denom <= 0.0) { throw DomainError("convergence_slope needs distinct resolutions"); }
  return (n * sxy - sx * sy) / denom;
}

double nested_l1_error(Eigen::Ref<Vector const> const &coarse, Eigen::Ref<Vector const> const &reference, double const h)
{
  Index const intervals_c = coarse.size() - 1;
  Index const intervals_r = reference.size() - 1;
  if (intervals_c < 1 || intervals_r % intervals_c != 0) { throw DimensionError("reference grid does not nest the coarse grid"); }
  Index const ratio = intervals_r / intervals_c;
  double s = 0.0;
  for (Index j = 0; j < coarse.size(); ++j) {
    s += std::abs(coarse[j] - reference[j * ratio]);
  }
  return h * s;
}

} // namespace fraclaw
