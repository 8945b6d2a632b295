#include "fraclaw/specialfn.hpp"
#include "fraclaw/caputo.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fraclaw {

double mittag_leffler(double const alpha, double const z, MittagLefflerParams const &params)
{
  check_alpha(alpha);
  if (params.max_terms < 1 || !(params.tol > 0.0)) { throw DomainError("invalid Mittag-Leffler parameters"); }
  if (z == 0.0) { return 1.0; }

  double const log_abs_z = std::log(std::abs(z));
  double sum = 1.0;
  double largest = 1.0;
  double previous = 1.0;
  for (Index n = 1; n < params.max_terms; ++n) {
    double const magnitude = std::exp(double(n) * log_abs_z - std::lgamma(alpha * double(n) + 1.0));
    double const term = (z < 0.0 && (n % 2 == 1)) ? -magnitude : magnitude;
    sum += term;
    largest = std::max(largest, magnitude);
    if (magnitude < params.tol && magnitude <= previous) {
      double const lost = largest * std::numeric_limits<double>::epsilon();
      if (lost > std::sqrt(std::numeric_limits<double>::epsilon()) * std::max(std::abs(sum), params.tol)) {
        throw ConvergenceError("Mittag-Leffler series lost precision to cancellation at z = " + std::to_string(z), lost);
      }
      return sum;
    }
    previous = magnitude;
  }
  throw ConvergenceError("Mittag-Leffler series did not converge within " + std::to_string(params.max_terms) +
                           " terms at z = " + std::to_string(z),
                         previous);
}

double fode_exact_solution(double const alpha, double const lambda, double const u0, double const t, MittagLefflerParams const &params)
{
  if (t < 0.0) { throw DomainError("time must be nonnegative"); }
  if (t == 0.0) { return u0; }
  return u0 * mittag_leffler(alpha, lambda * std::pow(t, alpha), params);
}

} // namespace fraclaw
