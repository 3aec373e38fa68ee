#ifndef CHARGEFLOW_GRID_HPP
#define CHARGEFLOW_GRID_HPP

#include <bit>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "chargeflow/errors.hpp"

namespace chargeflow {

/// Uniform periodic position grid x_i = x_min + i*dx, i = 0..n-1, with the
/// conjugate momentum lattice p_k = (k - n/2)*dp, dp = 2*pi*hbar/(n*dx).
/// n is restricted to powers of two so the transform layer never needs a
/// mixed-radix path.
class Grid {
 public:
  Grid(double x_min, double dx, std::size_t n, double hbar = 1.0)
      : x_min_(x_min), dx_(dx), n_(n), hbar_(hbar) {
    if (!(dx > 0.0)) throw DomainError("Grid: dx must be positive");
    if (!(hbar > 0.0)) throw DomainError("Grid: hbar must be positive");
    if (n < 8 || !std::has_single_bit(n))
      throw DomainError("Grid: n must be a power of two and at least 8");
  }

  double x_min() const { return x_min_; }
  double dx() const { return dx_; }
  std::size_t size() const { return n_; }
  double hbar() const { return hbar_; }

  double length() const { return dx_ * static_cast<double>(n_); }
  double x_max() const { return x_min_ + dx_ * static_cast<double>(n_ - 1); }
  double dp() const { return 2.0 * std::numbers::pi * hbar_ / length(); }

  double x(std::size_t i) const { return x_min_ + dx_ * static_cast<double>(i); }

  /// Momentum of bin k in increasing-momentum storage order.
  double p(std::size_t k) const {
    return dp() * (static_cast<double>(k) - static_cast<double>(n_ / 2));
  }

  bool contains(double x) const {
    return x >= x_min_ - 0.5 * dx_ && x <= x_max() + 0.5 * dx_;
  }

  /// Index of the grid node nearest to x.  Throws if x lies outside the grid.
  std::size_t index_near(double x) const {
    if (!contains(x)) throw DomainError("Grid: position lies outside the grid");
    double u = (x - x_min_) / dx_;
    auto i = static_cast<long long>(std::llround(u));
    if (i < 0) i = 0;
    if (i >= static_cast<long long>(n_)) i = static_cast<long long>(n_) - 1;
    return static_cast<std::size_t>(i);
  }

  /// Storage index of momentum p, which must coincide with a lattice point
  /// (|p - p_k| below tol*dp) and lie inside the momentum window.
  std::size_t momentum_index(double p, double tol = 1e-9) const {
    double u = p / dp() + static_cast<double>(n_ / 2);
    auto k = static_cast<long long>(std::llround(u));
    if (std::abs(u - static_cast<double>(k)) > tol)
      throw DomainError("Grid: momentum is not on the lattice");
    if (k < 0 || k >= static_cast<long long>(n_))
      throw DomainError("Grid: momentum lies outside the spectral window");
    return static_cast<std::size_t>(k);
  }

  bool operator==(const Grid& other) const = default;

 private:
  double x_min_;
  double dx_;
  std::size_t n_;
  double hbar_;
};

/// Builds a grid of n points starting at x_min whose length is as close to
/// length_target as possible subject to p0 lying exactly on the momentum
/// lattice.  Periodic boundary conditions make a plane wave single-bin only
/// when its momentum is commensurate with the box, so grids for carrier
/// momentum p0 should come from here.
inline Grid commensurate_grid(double x_min, double length_target, std::size_t n,
                              double p0, double hbar = 1.0) {
  if (p0 == 0.0) throw DomainError("commensurate_grid: p0 must be nonzero");
  if (!(length_target > 0.0))
    throw DomainError("commensurate_grid: length must be positive");
  double cycles = std::abs(p0) * length_target / (2.0 * std::numbers::pi * hbar);
  double j = std::round(cycles);
  if (j < 1.0) j = 1.0;
  double length = 2.0 * std::numbers::pi * hbar * j / std::abs(p0);
  return Grid(x_min, length / static_cast<double>(n), n, hbar);
}

}  // namespace chargeflow

#endif
