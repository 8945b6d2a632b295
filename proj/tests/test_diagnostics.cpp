#include "doctest.h"

#include "fraclaw/diagnostics.hpp"
#include "fraclaw/schemes.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace fraclaw;

namespace {

Vector vec(std::initializer_list<double> v)
{
  Vector out(Index(v.size()));
  Index i = 0;
  for (double x : v) {
    out[i++] = x;
  }
  return out;
}

Solver implicit_run(GridSpec const &g, double alpha, double tau, BoundaryKind bc, Vector const &u0, int steps)
{
  SchemeConfig c;
  c.scheme = SchemeKind::Implicit;
  c.alpha = AlphaField(alpha);
  c.dt = tau;
  c.flux = linear_advection(1.0);
  c.bc.kind = bc;
  Solver s(g, c, u0);
  for (int n = 0; n < steps; ++n) {
    s.step();
  }
  return s;
}

double lambda_of(double alpha, double tau, double h) { return std::pow(tau, alpha) / (h * std::tgamma(2.0 - alpha)); }

} // namespace

TEST_CASE("total variation and l1 distance")
{
  CHECK(total_variation(vec({0, 1, 0})) == 2.0);
  CHECK(total_variation(vec({3, 3, 3, 3})) == 0.0);
  CHECK(total_variation(vec({2, 2, 1, 1})) == 1.0);
  CHECK(total_variation(vec({-1, 2, -3})) == 8.0);
  CHECK_THROWS_AS(total_variation(vec({1})), DimensionError);

  CHECK(l1_distance(vec({1, 2, 3}), vec({1, 0, 4})) == 3.0);
  CHECK_THROWS_AS(l1_distance(vec({1, 2}), vec({1})), DimensionError);

  CHECK(discrete_entropy(vec({1, -2, 3}), [](double u) { return u * u; }) == 14.0);
  CHECK(discrete_entropy(vec({1, -2, 3}), [](double u) { return std::abs(u - 1.0); }) == 5.0);
}

TEST_CASE("diagnose weights norms by the spacing")
{
  auto const r = diagnose(vec({1, -2, 2}), 4, 0.5, 0.1);
  CHECK(r.level == 4);
  CHECK(r.t == 0.5);
  CHECK(r.tv == 7.0);
  CHECK(r.l1_norm == doctest::Approx(0.5));
  CHECK(r.entropy_l2 == 9.0);
  CHECK(r.l2_norm_sq == doctest::Approx(0.9));
  CHECK(r.min_val == -2.0);
  CHECK(r.max_val == 2.0);
}

TEST_CASE("convergence slope")
{
  std::vector<std::pair<double, double>> pts;
  std::vector<double> xs, ys;
  for (double h : {0.1, 0.05, 0.025, 0.0125}) {
    pts.emplace_back(h, 3.0 * std::pow(h, 1.5));
    xs.push_back(h);
    ys.push_back(3.0 * std::pow(h, 1.5) * (1.0 + 0.1 * h));
  }
  CHECK(convergence_slope(pts) == doctest::Approx(1.5).epsilon(1e-12));
  std::vector<std::pair<double, double>> noisy;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    noisy.emplace_back(xs[i], ys[i]);
  }
  CHECK(convergence_slope(noisy) == doctest::Approx(oracle::loglog_slope(xs, ys)).epsilon(1e-12));

  CHECK_THROWS_AS(convergence_slope({{0.1, 1.0}, {0.05, 0.5}}), DomainError);
  CHECK_THROWS_AS(convergence_slope({{0.1, 1.0}, {0.1, 0.5}, {0.1, 0.2}}), DomainError);
  CHECK_THROWS_AS(convergence_slope({{0.1, 1.0}, {0.05, 0.0}, {0.01, 0.2}}), DomainError);
}

TEST_CASE("nested l1 error samples coincident nodes")
{
  Vector const fine = vec({0, 1, 2, 3, 4, 5, 6, 7, 8});
  Vector const coarse = vec({0, 2.5, 4, 6, 7});
  CHECK(nested_l1_error(coarse, fine, 0.5) == doctest::Approx(0.5 * 1.5));
  CHECK(nested_l1_error(fine, fine, 0.1) == 0.0);
  CHECK_THROWS_AS(nested_l1_error(vec({0, 1, 2, 3}), fine, 0.5), DimensionError);
}

TEST_CASE("energy ledger: constant periodic state")
{
  GridSpec const g(0.0, 1.0, 16);
  auto const s = implicit_run(g, 0.6, 0.01, BoundaryKind::Periodic, Vector::Constant(16, 0.7), 5);
  auto const ledger = energy_decomposition(s.history(), 0.6, lambda_of(0.6, 0.01, g.h()), s.config().bc);
  REQUIRE(ledger.size() == 5);
  for (auto const &e : ledger) {
    CHECK(e.memory_damping == doctest::Approx(0.0));
    CHECK(e.upwind_dissipation == doctest::Approx(0.0));
    CHECK(e.boundary_flux == 0.0);
    CHECK(e.norm_sq == doctest::Approx(16 * 0.49));
    CHECK(e.history_energy == doctest::Approx(16 * 0.49));
  }
}

TEST_CASE("energy ledger balances on implicit runs")
{
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  GridSpec const g(0.0, 1.0, 16);
  Vector u0(16);
  for (auto &x : u0) {
    x = d(rng);
  }
  for (double alpha : {0.3, 0.75, 1.0}) {
    for (auto bc : {BoundaryKind::Periodic, BoundaryKind::Outflow}) {
      double const tau = 0.02;
      auto const s = implicit_run(g, alpha, tau, bc, u0, 12);
      auto const ledger = energy_decomposition(s.history(), alpha, lambda_of(alpha, tau, g.h()), s.config().bc);
      REQUIRE(ledger.size() == 12);
      for (auto const &e : ledger) {
        CHECK(e.relative_residual < 1e-9);
        CHECK(e.memory_damping >= 0.0);
        CHECK(e.upwind_dissipation > 0.0);
        if (bc == BoundaryKind::Periodic) {
          CHECK(e.boundary_flux == doctest::Approx(0.0).epsilon(1e-12));
          CHECK(e.norm_sq <= e.history_energy);
        }
      }
      if (alpha == 1.0) {
        // only the previous level carries weight
        CHECK(ledger.back().memory_damping == doctest::Approx((s.history().level(12) - s.history().level(11)).squaredNorm()));
      }
    }
  }
}

TEST_CASE("energy ledger rejects a history the scheme did not produce")
{
  GridSpec const g(0.0, 1.0, 16);
  Vector u0 = Vector::LinSpaced(16, -1.0, 1.0);
  auto const s = implicit_run(g, 0.5, 0.02, BoundaryKind::Periodic, u0, 3);
  HistoryBuffer<double> bent(s.history().level(0), 0.02);
  for (Index k = 1; k < 4; ++k) {
    bent.append(s.history().level(k) * (k == 2 ? 1.01 : 1.0));
  }
  CHECK_THROWS_AS(energy_decomposition(bent, 0.5, lambda_of(0.5, 0.02, g.h()), s.config().bc), NumericalError);
}
