#pragma once

#include "types.hpp"

namespace fraclaw {

/// Truncation controls for the Mittag-Leffler power series.
struct MittagLefflerParams
{
  Index max_terms = 400;
  double tol = 1e-14;
};

/// E_alpha(z) = sum_n z^n / Gamma(alpha n + 1) by direct summation.
///
/// Terms are formed in log space so Gamma of large arguments never overflows.
/// Throws ConvergenceError when the series has not dropped below `tol` within
/// `max_terms`, or when cancellation between terms has destroyed more than
/// half of the available digits (large negative z with small alpha).
double mittag_leffler(double alpha, double z, MittagLefflerParams const &params = {});

/// Exact solution u0 * E_alpha(lambda t^alpha) of D_t^alpha u = lambda u.
double fode_exact_solution(double alpha, double lambda, double u0, double t, MittagLefflerParams const &params = {});

} // namespace fraclaw
