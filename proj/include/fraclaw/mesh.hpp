#pragma once

// Uniform node-centred grid x_j = a + j h, the alpha field and boundary ghosts.

#include "types.hpp"

#include <array>
#include <functional>
#include <string>

namespace fraclaw {

struct GridSpec
{
  double x_left = -1.0;
  double x_right = 1.0;
  Index cells = 201; // number of nodes M+1

  GridSpec() = default;
  GridSpec(double a, double b, Index nodes);
  /// Grid on [a,b] with spacing h; (b-a)/h must be an integer to 1e-9.
  static GridSpec with_spacing(double a, double b, double h);

  double h() const { return (x_right - x_left) / double(cells - 1); }
  double x(Index const j) const { return x_left + double(j) * h(); }
  Vector nodes() const;
};

/// Fractional order as a constant or as a function of (x, t). Every evaluation
/// is checked against (0,1]; out-of-range values raise ConfigError.
class AlphaField
{
public:
  using Fn = std::function<double(double, double)>;

  AlphaField(double value = 1.0);
  AlphaField(Fn fn, std::string description);

  bool is_constant() const { return !fn_; }
  double value() const { return value_; }
  std::string const &description() const { return description_; }

  double operator()(double x, double t) const;
  /// alpha at every node of the grid at time t
  Vector sample(GridSpec const &grid, double t) const;

private:
  double value_ = 1.0;
  Fn fn_;
  std::string description_;
};

enum struct BoundaryKind
{
  Outflow,
  Periodic,
  DirichletFromInitial
};

std::string to_string(BoundaryKind kind);
BoundaryKind boundary_from_string(std::string const &name);

struct BoundaryTreatment
{
  BoundaryKind kind = BoundaryKind::Outflow;
  // Frozen boundary values for DirichletFromInitial; filled by freeze().
  double left_value = 0.0;
  double right_value = 0.0;

  template <typename Derived> BoundaryTreatment &freeze(Eigen::MatrixBase<Derived> const &initial)
  {
    left_value = initial[0];
    right_value = initial[initial.size() - 1];
    return *this;
  }
};

enum struct Side
{
  Left,
  Right
};

Vector sample_initial(GridSpec const &grid, std::function<double(double)> const &u0);

/// Ghost values in spatial order: Left gives [U_{-w}, ..., U_{-1}], Right gives [U_{N}, ..., U_{N+w-1}].
Vector ghost_values(Eigen::Ref<Vector const> const &state, BoundaryTreatment const &bc, Side side, Index width);

/// State extended by `width` ghosts on each side.
Vector padded(Eigen::Ref<Vector const> const &state, BoundaryTreatment const &bc, Index width);

} // namespace fraclaw
