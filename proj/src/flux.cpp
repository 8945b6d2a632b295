#include "fraclaw/flux.hpp"

#include <algorithm>
#include <cmath>

namespace fraclaw {

FluxModel linear_advection(double const a)
{
  if (!std::isfinite(a)) { throw DomainError("wave speed must be finite"); }
  FluxModel m;
  m.name = "linear_advection";
  double const ap = a >= 0.0 ? a : 0.0;
  double const am = a >= 0.0 ? 0.0 : a;
  m.f_plus = [ap](double u) { return ap * u; };
  m.f_minus = [am](double u) { return am * u; };
  m.df_plus = [ap](double) { return ap; };
  m.df_minus = [am](double) { return am; };
  m.dfplus_bound = [ap](double, double) { return ap; };
  m.dfminus_bound = [am](double, double) { return -am; };
  return m;
}

FluxModel burgers()
{
  FluxModel m;
  m.name = "burgers";
  m.f_plus = [](double u) { return u > 0.0 ? 0.5 * u * u : 0.0; };
  m.f_minus = [](double u) { return u < 0.0 ? 0.5 * u * u : 0.0; };
  m.df_plus = [](double u) { return u > 0.0 ? u : 0.0; };
  m.df_minus = [](double u) { return u < 0.0 ? u : 0.0; };
  m.dfplus_bound = [](double, double u_max) { return std::max(0.0, u_max); };
  m.dfminus_bound = [](double u_min, double) { return std::max(0.0, -u_min); };
  return m;
}

std::string to_string(Limiter const kind)
{
  switch (kind) {
  case Limiter::Minmod: return "minmod";
  case Limiter::VanLeer: return "van_leer";
  }
  return "unknown";
}

Limiter limiter_from_string(std::string const &name)
{
  if (name == "minmod") { return Limiter::Minmod; }
  if (name == "van_leer" || name == "vanleer") { return Limiter::VanLeer; }
  throw ConfigError("unknown limiter '" + name + "'");
}

double limiter(Limiter const kind, double const theta)
{
  if (!(theta > 0.0)) { return 0.0; }
  switch (kind) {
  case Limiter::Minmod: return std::min(1.0, theta);
  case Limiter::VanLeer:
    if (std::isinf(theta)) { return 2.0; }
    return 2.0 * theta / (1.0 + theta);
  }
  return 0.0;
}

double limited_increment(Limiter const kind, double const backward, double const forward)
{
  if (backward == 0.0) { return 0.0; }
  return backward * limiter(kind, forward / backward);
}

} // namespace fraclaw
