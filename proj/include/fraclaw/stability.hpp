#pragma once

#include "types.hpp"

#include <complex>
#include <vector>

namespace fraclaw {

/// Largest explicit time step allowed by
///   order_factor * tau^alpha * speed_sum / (h Gamma(2-alpha)) <= 2 - 2^{1-alpha}.
struct CflBound
{
  double tau_max = 0.0;
  double alpha = 1.0;
  double h = 0.0;
  double speed_sum = 0.0;
  int order_factor = 1;
  bool unbounded = false; // speed_sum == 0: any tau is admissible

  /// Left-hand side of the condition divided by its right-hand side; <= 1 means admissible.
  double ratio(double dt) const;
  bool admits(double const dt) const { return unbounded || ratio(dt) <= 1.0 + 1e-12; }
};

CflBound cfl_max_dt(double alpha, double h, double speed_sum, int order_factor);

struct LocusPoint
{
  double theta;
  std::complex<double> z;
};

/// z(theta) = 1 - sum_k c_k^{n+1} exp(i (k-n-1) theta) at `samples` uniform theta in [0, 2 pi).
/// The absolute stability region of the fractional backward Euler method is the exterior of this curve.
std::vector<LocusPoint> boundary_locus(double alpha, Index n, Index samples);

/// Roots of pi(xi; z) = (1-z) xi^{n+1} - sum_k c_k^{n+1} xi^k from companion-matrix eigenvalues.
/// Restricted to n <= 30.
std::vector<std::complex<double>> stability_roots(double alpha, Index n, std::complex<double> z);

/// Symmetric Hausdorff distance between two sampled curves.
double hausdorff_distance(std::vector<LocusPoint> const &a, std::vector<LocusPoint> const &b);

} // namespace fraclaw
