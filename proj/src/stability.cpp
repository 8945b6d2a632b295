#include "fraclaw/stability.hpp"
#include "fraclaw/caputo.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace fraclaw {

double CflBound::ratio(double const dt) const
{
  if (unbounded) { return 0.0; }
  return order_factor * std::pow(dt, alpha) * speed_sum / (h * std::tgamma(2.0 - alpha) * tilde_c(alpha));
}

CflBound cfl_max_dt(double const alpha, double const h, double const speed_sum, int const order_factor)
{
  check_alpha(alpha);
  if (!(h > 0.0)) { throw DomainError("cfl_max_dt: h must be positive"); }
  if (speed_sum < 0.0) { throw DomainError("cfl_max_dt: speed_sum must be nonnegative"); }
  if (order_factor != 1 && order_factor != 2) { throw DomainError("cfl_max_dt: order factor must be 1 or 2"); }
  CflBound b{0.0, alpha, h, speed_sum, order_factor, speed_sum == 0.0};
  if (b.unbounded) {
    b.tau_max = std::numeric_limits<double>::infinity();
    return b;
  }
  b.tau_max = std::pow(h * std::tgamma(2.0 - alpha) * tilde_c(alpha) / (order_factor * speed_sum), 1.0 / alpha);
  return b;
}

std::vector<LocusPoint> boundary_locus(double const alpha, Index const n, Index const samples)
{
  if (samples < 8) { throw DomainError("boundary_locus needs at least 8 samples"); }
  if (n < 0) { throw DomainError("boundary_locus needs n >= 0"); }
  auto const w = caputo_weights(alpha, n + 1);
  std::vector<LocusPoint> curve;
  curve.reserve(std::size_t(samples));
  for (Index s = 0; s < samples; ++s) {
    double const theta = 2.0 * std::numbers::pi * double(s) / double(samples);
    std::complex<double> acc = 0.0;
    for (Index k = 0; k <= n; ++k) {
      acc += w.weights[k] * std::polar(1.0, double(k - n - 1) * theta);
    }
    curve.push_back({theta, 1.0 - acc});
  }
  return curve;
}

std::vector<std::complex<double>> stability_roots(double const alpha, Index const n, std::complex<double> const z)
{
  if (n < 0 || n > 30) { throw DomainError("stability_roots supports 0 <= n <= 30"); }
  if (z == 1.0) { throw DomainError("stability polynomial degenerates at z = 1"); }
  auto const w = caputo_weights(alpha, n + 1);
  Index const deg = n + 1;
  // monic form xi^{n+1} - sum_k (c_k / (1-z)) xi^k
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (Index i = 1; i < deg; ++i) {
    companion(i, i - 1) = 1.0;
  }
  for (Index k = 0; k < deg; ++k) {
    companion(k, deg - 1) = w.weights[k] / (1.0 - z);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<std::complex<double>> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  return roots;
}

namespace {
double directed(std::vector<LocusPoint> const &from, std::vector<LocusPoint> const &to)
{
  double worst = 0.0;
  for (auto const &p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (auto const &q : to) {
      best = std::min(best, std::abs(p.z - q.z));
    }
    worst = std::max(worst, best);
  }
  return worst;
}
} // namespace

double hausdorff_distance(std::vector<LocusPoint> const &a, std::vector<LocusPoint> const &b)
{
  if (a.empty() || b.empty()) { throw DimensionError("hausdorff_distance: empty curve"); }
  return std::max(directed(a, b), directed(b, a));
}

} // namespace fraclaw
