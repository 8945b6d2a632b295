#pragma once

// L1 discretization of the Caputo derivative on a uniform time grid.
//
//   D_t^a U^{n+1} = (U^{n+1} - sum_{k=0}^{n} c_k^{n+1} U^k) / (Gamma(2-a) tau^a)
//
// with c_0 = (n+1)^b - n^b and c_k = 2(n+1-k)^b - (n+2-k)^b - (n-k)^b, b = 1-a.
// The weights are a convex combination, so the memory term is a weighted
// average of the stored history at every cell.

#include "types.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace fraclaw {

template <typename Scalar> inline void check_alpha(Scalar const alpha)
{
  if (!(alpha > Scalar(0) && alpha <= Scalar(1))) {
    throw DomainError("alpha must lie in (0,1], got " + std::to_string(double(alpha)));
  }
}

namespace detail {

// (m+1)^b - m^b without cancellation.
template <typename Scalar> Scalar first_difference(Scalar const b, Index const m)
{
  using std::expm1;
  using std::log1p;
  using std::pow;
  if (m == 0) { return Scalar(1); }
  Scalar const x = Scalar(m);
  return pow(x, b) * expm1(b * log1p(Scalar(1) / x));
}

// 2 m^b - (m+1)^b - (m-1)^b for m >= 1. For larger m the three powers nearly cancel,
// so use m^b * (2 - (1+1/m)^b - (1-1/m)^b) = -2 m^b sum_{j>=1} binom(b, 2j) m^{-2j}.
template <typename Scalar> Scalar second_difference(Scalar const b, Index const m)
{
  using std::abs;
  using std::pow;
  Scalar const x = Scalar(m);
  if (m < 8) { return Scalar(2) * pow(x, b) - pow(x + Scalar(1), b) - pow(x - Scalar(1), b); }
  Scalar const inv2 = Scalar(1) / (x * x);
  Scalar binom = Scalar(1); // binom(b, i)
  Scalar power = Scalar(1);
  Scalar sum = Scalar(0);
  for (Index i = 0; i < 200; i += 2) {
    binom *= (b - Scalar(i)) / Scalar(i + 1);
    binom *= (b - Scalar(i + 1)) / Scalar(i + 2);
    power *= inv2;
    Scalar const term = binom * power;
    sum += term;
    if (abs(term) <= std::numeric_limits<Scalar>::epsilon() * abs(sum)) { break; }
  }
  return Scalar(-2) * pow(x, b) * sum;
}

} // namespace detail

template <typename Scalar> struct CaputoWeights
{
  Scalar alpha;
  Index level; // n+1: number of stored history levels
  VectorT<Scalar> weights; // c_0 ... c_n, oldest first
};

/// Most recent weight c_n^{n+1} = 2 - 2^{1-alpha}; independent of n.
template <typename Scalar> Scalar tilde_c(Scalar const alpha)
{
  check_alpha(alpha);
  using std::pow;
  return Scalar(2) - pow(Scalar(2), Scalar(1) - alpha);
}

template <typename Scalar> CaputoWeights<Scalar> caputo_weights(Scalar const alpha, Index const level)
{
  check_alpha(alpha);
  if (level < 1) { throw DomainError("Caputo weight level must be >= 1, got " + std::to_string(level)); }
  CaputoWeights<Scalar> w{alpha, level, VectorT<Scalar>::Zero(level)};
  Index const n = level - 1;
  if (alpha == Scalar(1)) {
    w.weights[n] = Scalar(1);
    return w;
  }
  using std::pow;
  Scalar const b = Scalar(1) - alpha;
  w.weights[0] = detail::first_difference(b, n);
  for (Index k = 1; k <= n; ++k) {
    w.weights[k] = detail::second_difference(b, n + 1 - k);
  }
  return w;
}

/// Gamma(2-alpha) * tau^alpha, the scaling between the L1 difference and D_t^alpha.
template <typename Scalar> Scalar caputo_scale(Scalar const alpha, Scalar const dt)
{
  using std::pow;
  using std::tgamma;
  return tgamma(Scalar(2) - alpha) * pow(dt, alpha);
}

/// Full time history U^0 ... U^n, stored column per level. Append-only.
template <typename Scalar> class HistoryBuffer
{
public:
  HistoryBuffer(Index const cells, Scalar const dt, Index const reserve_levels = 16)
    : cells_(cells)
    , dt_(dt)
    , data_(cells, std::max<Index>(reserve_levels, 1))
  {
    if (cells < 1) { throw DimensionError("history needs at least one cell"); }
    if (!(dt > Scalar(0))) { throw DomainError("time step must be positive"); }
  }

  template <typename Derived> HistoryBuffer(Eigen::MatrixBase<Derived> const &initial, Scalar const dt, Index const reserve_levels = 16)
    : HistoryBuffer(initial.size(), dt, reserve_levels)
  {
    append(initial);
  }

  template <typename Derived> void append(Eigen::MatrixBase<Derived> const &u)
  {
    if (u.size() != cells_) {
      throw DimensionError("level has " + std::to_string(u.size()) + " cells, history has " + std::to_string(cells_));
    }
    if (levels_ == data_.cols()) { data_.conservativeResize(Eigen::NoChange, 2 * data_.cols()); }
    data_.col(levels_++) = u;
  }

  Index levels() const { return levels_; }
  Index cells() const { return cells_; }
  Scalar dt() const { return dt_; }
  bool empty() const { return levels_ == 0; }

  auto level(Index const k) const { return data_.col(k); }
  auto latest() const { return data_.col(levels_ - 1); }
  /// cells x levels view of the stored data
  auto matrix() const { return data_.leftCols(levels_); }
  auto cell(Index const j) const { return data_.row(j).head(levels_); }

private:
  Index cells_;
  Scalar dt_;
  MatrixT<Scalar> data_;
  Index levels_ = 0;
};

template <typename Scalar> void check_weights(HistoryBuffer<Scalar> const &history, CaputoWeights<Scalar> const &w)
{
  if (w.level != history.levels() || w.weights.size() != history.levels()) {
    throw DimensionError("weights for level " + std::to_string(w.level) + " applied to a history of " +
                         std::to_string(history.levels()) + " levels");
  }
}

/// sum_k c_k U_cell^k at a single cell.
template <typename Scalar> Scalar caputo_memory_term(HistoryBuffer<Scalar> const &history, CaputoWeights<Scalar> const &w, Index const cell)
{
  check_weights(history, w);
  if (cell < 0 || cell >= history.cells()) { throw DimensionError("cell index out of range"); }
  return history.cell(cell).dot(w.weights.transpose());
}

/// sum_k c_k U^k at every cell.
template <typename Scalar> VectorT<Scalar> caputo_memory(HistoryBuffer<Scalar> const &history, CaputoWeights<Scalar> const &w)
{
  check_weights(history, w);
  return history.matrix() * w.weights;
}

/// Discrete Caputo derivative D_t^alpha evaluated at a candidate next level.
template <typename Scalar, typename Derived>
VectorT<Scalar> caputo_apply(HistoryBuffer<Scalar> const &history, Eigen::MatrixBase<Derived> const &candidate_next, Scalar const alpha, Scalar const dt)
{
  check_alpha(alpha);
  if (!(dt > Scalar(0))) { throw DomainError("time step must be positive"); }
  if (candidate_next.size() != history.cells()) { throw DimensionError("candidate level does not match history cell count"); }
  auto const w = caputo_weights(alpha, history.levels());
  return (candidate_next - caputo_memory(history, w)) / caputo_scale(alpha, dt);
}

} // namespace fraclaw
