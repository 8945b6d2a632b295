#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace fraclaw {

using Index = Eigen::Index;

template <typename Scalar> using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar> using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorT<double>;
using Matrix = MatrixT<double>;

// Error categories. The CLI maps each onto its own exit code.

/// Argument outside the mathematical domain of an operation (alpha outside (0,1], level < 1, ...).
struct DomainError : std::domain_error
{
  using std::domain_error::domain_error;
};

/// Inconsistent sizes between arrays, weights and histories.
struct DimensionError : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

/// Invalid run configuration (bad keys, alpha field leaving (0,1], singular FODE step, strict CFL).
struct ConfigError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// NaN/Inf detected in a solution level.
struct NumericalError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Output files could not be written.
struct IoError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Iterative solve (series, Newton, sweeps) did not converge.
struct ConvergenceError : std::runtime_error
{
  ConvergenceError(std::string const &what, double res)
    : std::runtime_error(what)
    , residual(res)
  {
  }
  double residual;
};

} // namespace fraclaw
