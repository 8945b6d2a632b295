#pragma once

// Split fluxes f = f+ + f- with (f+)' >= 0 and (f-)' <= 0, and the slope
// limiters used by the MUSCL reconstruction.

#include "types.hpp"

#include <functional>
#include <string>

namespace fraclaw {

struct FluxModel
{
  using Fn = std::function<double(double)>;
  using Bound = std::function<double(double, double)>;

  std::string name;
  Fn f_plus;
  Fn f_minus;
  Fn df_plus;  // derivative of f_plus, used by the implicit cell solves
  Fn df_minus;
  Bound dfplus_bound;  // max |(f+)'| on [u_min, u_max]
  Bound dfminus_bound; // max |(f-)'| on [u_min, u_max]

  double operator()(double const u) const { return f_plus(u) + f_minus(u); }
  double speed_sum(double const u_min, double const u_max) const
  {
    return dfplus_bound(u_min, u_max) + dfminus_bound(u_min, u_max);
  }
};

/// f = a u, upwinded by the sign of a.
FluxModel linear_advection(double a);

/// f = u^2/2 split at the sonic point u = 0.
FluxModel burgers();

enum struct Limiter
{
  Minmod,
  VanLeer
};

std::string to_string(Limiter kind);
Limiter limiter_from_string(std::string const &name);

/// phi(theta). Both limiters vanish for theta <= 0.
double limiter(Limiter kind, double theta);

/// backward * phi(forward / backward): the limited increment of a reconstruction.
/// Flat backward data (backward == 0) gives 0.
double limited_increment(Limiter kind, double backward, double forward);

} // namespace fraclaw
