#include "fraclaw/mesh.hpp"

#include <cmath>

namespace fraclaw {

GridSpec::GridSpec(double const a, double const b, Index const nodes)
  : x_left(a)
  , x_right(b)
  , cells(nodes)
{
  if (!(b > a)) { throw ConfigError("grid needs x_right > x_left"); }
  if (nodes < 3) { throw ConfigError("grid needs at least 3 nodes"); }
}

GridSpec GridSpec::with_spacing(double const a, double const b, double const h)
{
  if (!(h > 0.0)) { throw ConfigError("grid spacing must be positive"); }
  double const intervals = (b - a) / h;
  double const rounded = std::round(intervals);
  if (std::abs(intervals - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw ConfigError("spacing " + std::to_string(h) + " does not divide the domain");
  }
  return GridSpec(a, b, Index(rounded) + 1);
}

Vector GridSpec::nodes() const
{
  Vector x(cells);
  for (Index j = 0; j < cells; ++j) {
    x[j] = this->x(j);
  }
  return x;
}

AlphaField::AlphaField(double const value)
  : value_(value)
  , description_(std::to_string(value))
{
  if (!(value > 0.0 && value <= 1.0)) { throw ConfigError("alpha must lie in (0,1], got " + std::to_string(value)); }
}

AlphaField::AlphaField(Fn fn, std::string description)
  : fn_(std::move(fn))
  , description_(std::move(description))
{
}

double AlphaField::operator()(double const x, double const t) const
{
  if (!fn_) { return value_; }
  double const a = fn_(x, t);
  if (!(a > 0.0 && a <= 1.0)) {
    throw ConfigError("alpha field '" + description_ + "' evaluates to " + std::to_string(a) + " at x=" + std::to_string(x) +
                      ", t=" + std::to_string(t) + ", outside (0,1]");
  }
  return a;
}

Vector AlphaField::sample(GridSpec const &grid, double const t) const
{
  if (!fn_) { return Vector::Constant(grid.cells, value_); }
  Vector a(grid.cells);
  for (Index j = 0; j < grid.cells; ++j) {
    a[j] = (*this)(grid.x(j), t);
  }
  return a;
}

std::string to_string(BoundaryKind const kind)
{
  switch (kind) {
  case BoundaryKind::Outflow: return "outflow";
  case BoundaryKind::Periodic: return "periodic";
  case BoundaryKind::DirichletFromInitial: return "dirichlet_from_initial";
  }
  return "unknown";
}

BoundaryKind boundary_from_string(std::string const &name)
{
  if (name == "outflow") { return BoundaryKind::Outflow; }
  if (name == "periodic") { return BoundaryKind::Periodic; }
  if (name == "dirichlet_from_initial" || name == "dirichlet") { return BoundaryKind::DirichletFromInitial; }
  throw ConfigError("unknown boundary treatment '" + name + "'");
}

Vector sample_initial(GridSpec const &grid, std::function<double(double)> const &u0)
{
  Vector u(grid.cells);
  for (Index j = 0; j < grid.cells; ++j) {
    u[j] = u0(grid.x(j));
  }
  return u;
}

Vector ghost_values(Eigen::Ref<Vector const> const &state, BoundaryTreatment const &bc, Side const side, Index const width)
{
  if (width < 1 || width > 2) { throw DimensionError("ghost width must be 1 or 2"); }
  Index const n = state.size();
  if (n < width) { throw DimensionError("state shorter than ghost width"); }
  Vector g(width);
  for (Index i = 0; i < width; ++i) {
    switch (bc.kind) {
    case BoundaryKind::Outflow: g[i] = side == Side::Left ? state[0] : state[n - 1]; break;
    case BoundaryKind::Periodic: g[i] = side == Side::Left ? state[n - width + i] : state[i]; break;
    case BoundaryKind::DirichletFromInitial: g[i] = side == Side::Left ? bc.left_value : bc.right_value; break;
    }
  }
  return g;
}

Vector padded(Eigen::Ref<Vector const> const &state, BoundaryTreatment const &bc, Index const width)
{
  Index const n = state.size();
  Vector p(n + 2 * width);
  p.head(width) = ghost_values(state, bc, Side::Left, width);
  p.segment(width, n) = state;
  p.tail(width) = ghost_values(state, bc, Side::Right, width);
  return p;
}

} // namespace fraclaw
