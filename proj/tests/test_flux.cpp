#include "doctest.h"

#include "fraclaw/flux.hpp"

#include <random>

using namespace fraclaw;

TEST_CASE("linear advection splitting")
{
  auto const right = linear_advection(1.0);
  CHECK(right.f_plus(2.0) == 2.0);
  CHECK(right.f_minus(2.0) == 0.0);
  CHECK(right.dfplus_bound(1.0, 2.0) == 1.0);
  CHECK(right.dfminus_bound(1.0, 2.0) == 0.0);

  auto const left = linear_advection(-1.0);
  CHECK(left.f_plus(2.0) == 0.0);
  CHECK(left.f_minus(2.0) == -2.0);
  CHECK(left.speed_sum(-3.0, 3.0) == 1.0);

  CHECK_THROWS_AS(linear_advection(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("burgers splitting")
{
  auto const b = burgers();
  CHECK(b.f_plus(2.0) == 2.0);
  CHECK(b.f_minus(2.0) == 0.0);
  CHECK(b.f_plus(-2.0) == 0.0);
  CHECK(b.f_minus(-2.0) == 2.0);
  CHECK(b.dfplus_bound(-1.0, 1.0) == 1.0);
  CHECK(b.dfminus_bound(-1.0, 1.0) == 1.0);
  CHECK(b.dfminus_bound(0.5, 3.0) == 0.0);

  // monotone parts and f+ + f- = u^2/2 on [-5, 5]
  double prev_p = b.f_plus(-5.0), prev_m = b.f_minus(-5.0);
  for (int i = 1; i <= 1000; ++i) {
    double const u = -5.0 + 0.01 * i;
    CHECK(b.f_plus(u) >= prev_p);
    CHECK(b.f_minus(u) <= prev_m);
    CHECK(b.df_plus(u) >= 0.0);
    CHECK(b.df_minus(u) <= 0.0);
    CHECK(b(u) == doctest::Approx(0.5 * u * u));
    prev_p = b.f_plus(u);
    prev_m = b.f_minus(u);
  }
}

TEST_CASE("limiters: point values")
{
  CHECK(limiter(Limiter::Minmod, 2.0) == 1.0);
  CHECK(limiter(Limiter::Minmod, -1.0) == 0.0);
  CHECK(limiter(Limiter::Minmod, 0.5) == 0.5);
  CHECK(limiter(Limiter::VanLeer, 1.0) == 1.0);
  CHECK(limiter(Limiter::VanLeer, 3.0) == 1.5);
  CHECK(limiter(Limiter::VanLeer, -1.0) == 0.0);
  CHECK(limiter(Limiter::VanLeer, -3.0) == 0.0);
  CHECK(limited_increment(Limiter::Minmod, 0.0, 1.0) == 0.0);
  CHECK(limited_increment(Limiter::VanLeer, 0.0, -4.0) == 0.0);
  CHECK(limiter_from_string("van_leer") == Limiter::VanLeer);
  CHECK_THROWS_AS(limiter_from_string("superbee"), ConfigError);
}

TEST_CASE("limiters: symmetry and bounds")
{
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> mag(1e-3, 10.0);
  for (auto kind : {Limiter::Minmod, Limiter::VanLeer}) {
    for (int i = 0; i < 500; ++i) {
      double const sign = (i % 2) ? 1.0 : -1.0;
      double const a = sign * mag(rng), b = sign * mag(rng);
      CHECK(a * limiter(kind, b / a) == doctest::Approx(b * limiter(kind, a / b)).epsilon(1e-12));
      double const theta = mag(rng);
      double const phi = limiter(kind, theta);
      CHECK(phi >= 0.0);
      CHECK(phi <= 2.0);
      CHECK(phi / theta <= 2.0);
    }
  }
}
