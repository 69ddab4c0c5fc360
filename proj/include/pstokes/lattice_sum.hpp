#ifndef PSTOKES_LATTICE_SUM_HPP
#define PSTOKES_LATTICE_SUM_HPP

#include <cmath>

#include "pstokes/common.hpp"
#include "pstokes/geometry.hpp"

namespace pstokes {

// Scalar summand of the anisotropy lattice sum,
//   S(y) = (y1^2 - y2^2)/|y|^5.
// Homogeneous of degree -3, odd under the swap y1 <-> y2, even under axis
// reflections; its mean over every sphere centered at 0 vanishes.
template <typename Derived>
typename Derived::Scalar summand(const Eigen::MatrixBase<Derived>& y) {
  using Scalar = typename Derived::Scalar;
  const Scalar r2 = y.squaredNorm();
  if (r2 == 0) throw SingularPointError("summand: y = 0");
  return (y[0] * y[0] - y[1] * y[1]) / (r2 * r2 * std::sqrt(r2));
}

inline double summand(double y1, double y2, double y3) {
  const double r2 = y1 * y1 + y2 * y2 + y3 * y3;
  if (r2 == 0.0) throw SingularPointError("summand: y = 0");
  return (y1 * y1 - y2 * y2) / (r2 * r2 * std::sqrt(r2));
}

// A numeric estimate together with a rigorous analytic half width.
// Floating-point roundoff is excluded from half_width by convention; the
// optional roundoff_slack field carries n*eps*sum|terms| for auditors.
struct BoundedValue {
  double estimate = 0.0;
  double half_width = 0.0;
  double roundoff_slack = 0.0;

  double lower() const { return estimate - half_width; }
  double upper() const { return estimate + half_width; }
  bool excludes_zero() const { return lower() > 0.0 || upper() < 0.0; }
  bool intersects(const BoundedValue& other) const {
    return lower() <= other.upper() && other.lower() <= upper();
  }
  BoundedValue scaled(double c) const {
    return {c * estimate, std::abs(c) * half_width, std::abs(c) * roundoff_slack};
  }
};

struct SumOptions {
  int threads = 1;
  bool deterministic = true;
};

// Truncated sum of S over the nonzero lattice points with |y|_inf <= 2k
// (in units of the smallest generator). Terms are grouped in shells of
// increasing |y|_inf, lexicographic inside a shell, compensated per shell,
// and combined by a fixed pairwise tree; the result is identical for any
// thread count when deterministic reduction is on.
double partial_sum_cube(const LatticeSpec& lattice, int k, const SumOptions& opts = {});

// Same sum in one flat lexicographic loop with plain accumulation. Kept as
// an independent route for cross-checking the shell summation.
double partial_sum_cube_naive(const LatticeSpec& lattice, int k);

// n*eps*sum|S(y)| roundoff audit for the truncated sum.
double partial_sum_roundoff_slack(const LatticeSpec& lattice, int k);

// Rigorous truncation bound for the renormalized sum at cube level 2k:
//   4/(4k+1) + 84 pi (4k-2)^2/(4k-5)^3, valid for k >= 2.
double tail_bound(int k);
// The outside-the-cube part of tail_bound alone (without the cell-mean slab
// term); this is the half width of the refined interval.
double tail_bound_outside(int k);

// Plain integral of S over the slab [2k+1/2, 2k+1] x [-2k-1/2, 2k+1/2]^2,
// the telescoped value of all cell means over |y|_inf <= 2k on the rescaled
// lattice (including the origin-cell principal value).
double slab_integral(int k, int order = 48);

// Integral of S over a sphere of any radius (analytically 0; the azimuthal
// grid makes the quadrature vanish to roundoff).
double sphere_integral_summand(int order = 32);

// Integral of S over the spherical annulus r_inner < |z| < r_outer
// (radially exact: equals the sphere integral times log(r_outer/r_inner)).
double annulus_integral_summand(double r_inner, double r_outer, int order = 32);

// Mean of S over a lattice cell. For the origin cell this is the spherical
// principal value: the inner ball contributes exactly 0 (zero spherical
// mean), and what remains reduces to smooth face integrals of S(p) log|p|.
// pv_delta is validated against (0, 1/2]; by the exact inner-ball
// cancellation the value does not depend on it.
double cell_average_summand(const Cell& cell, int order = 24, double pv_delta = 0.25);

// Interval certified to contain the exact renormalized constant c0':
// estimate = truncated plain sum, half width = tail_bound(k).
BoundedValue c0_prime_interval(int k, const SumOptions& opts = {});

// Sharper estimate from the telescoped cell means: estimate = truncated sum
// minus the slab integral, half width = outside-cube bound only.
BoundedValue refined_c0_prime_interval(int k, int order = 48, const SumOptions& opts = {});

struct LatticeConstants {
  BoundedValue c0_prime;
  BoundedValue c0;    // = -c0'/8: degree -3 homogeneity from the L = 1/2 lattice
  BoundedValue cbar;  // = 5 c0
};

LatticeConstants lattice_constants(int k, const SumOptions& opts = {});

}  // namespace pstokes

#endif  // PSTOKES_LATTICE_SUM_HPP
