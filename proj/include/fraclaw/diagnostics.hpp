#pragma once

// Quantities asserted by the stability theory: total variation, l1 distances,
// l2 energy balance, discrete entropies, and log-log convergence fits.

#include "caputo.hpp"
#include "mesh.hpp"
#include "types.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace fraclaw {

template <typename Derived> typename Derived::Scalar total_variation(Eigen::MatrixBase<Derived> const &u)
{
  if (u.size() < 2) { throw DimensionError("total variation needs at least two values"); }
  Index const n = u.size();
  return (u.tail(n - 1) - u.head(n - 1)).cwiseAbs().sum();
}

template <typename A, typename B>
typename A::Scalar l1_distance(Eigen::MatrixBase<A> const &u, Eigen::MatrixBase<B> const &v)
{
  if (u.size() != v.size()) { throw DimensionError("l1_distance: length mismatch"); }
  return (u - v).cwiseAbs().sum();
}

/// sum_j eta(u_j) for a convex entropy eta
template <typename Derived, typename Eta> typename Derived::Scalar discrete_entropy(Eigen::MatrixBase<Derived> const &u, Eta &&eta)
{
  typename Derived::Scalar s(0);
  for (Index j = 0; j < u.size(); ++j) {
    s += eta(u[j]);
  }
  return s;
}

struct DiagnosticsRecord
{
  Index level = 0;
  double t = 0.0;
  double tv = 0.0;
  double l1_norm = 0.0;
  double l2_norm_sq = 0.0;
  double entropy_l2 = 0.0; // sum u^2, unscaled
  double min_val = 0.0;
  double max_val = 0.0;
};

/// Norms are grid-weighted (h * sum); tv and entropy_l2 are plain sums.
DiagnosticsRecord diagnose(Eigen::Ref<Vector const> const &u, Index level, double t, double h);

/// Per-level terms of the l2 energy identity of the implicit upwind scheme for f = a u, a > 0:
///   |U^{n+1}|^2 + damping + dissipation + boundary = sum_k c_k |U^k|^2
struct EnergyLedgerEntry
{
  Index level = 0;
  double norm_sq = 0.0;           // |U^{n+1}|^2
  double memory_damping = 0.0;    // sum_j sum_k c_k (U_j^{n+1} - U_j^k)^2
  double upwind_dissipation = 0.0; // lambda sum_j (U_j^{n+1} - U_{j-1}^{n+1})^2, including the ghost pair at j = 0
  double boundary_flux = 0.0;     // lambda (U_M^2 - U_{-1}^2); zero for periodic data
  double history_energy = 0.0;    // sum_k c_k |U^k|^2
  double relative_residual = 0.0;
};

/// Ledger for every level 1..n of a constant-alpha run. `lambda` is a tau^alpha / (h Gamma(2-alpha)).
/// Throws NumericalError when any level misses the identity by more than `rtol` relative.
std::vector<EnergyLedgerEntry> energy_decomposition(HistoryBuffer<double> const &history, double alpha, double lambda,
                                                    BoundaryTreatment const &bc, double rtol = 1e-9);

/// Least-squares slope of log(error) against log(resolution).
double convergence_slope(std::vector<std::pair<double, double>> const &points);

/// h * sum_j |coarse_j - reference_{ratio j}| on nested grids sharing their endpoints.
double nested_l1_error(Eigen::Ref<Vector const> const &coarse, Eigen::Ref<Vector const> const &reference, double h);

} // namespace fraclaw
