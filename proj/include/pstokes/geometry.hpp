#ifndef PSTOKES_GEOMETRY_HPP
#define PSTOKES_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pstokes/common.hpp"

namespace pstokes {

// Rectangular torus (R/2L1 Z) x (R/2L2 Z) x (R/2L3 Z), stored by half periods.
struct TorusGeometry {
  Vec3 half_periods;

  double volume() const { return 8.0 * half_periods.prod(); }

  // Unit torus (R/Z)^3.
  static TorusGeometry unit() { return {Vec3(0.5, 0.5, 0.5)}; }
  // (R/2L Z)^3.
  static TorusGeometry cubic(double L) { return {Vec3(L, L, L)}; }
  // (R/4L Z) x (R/2L Z)^2: first period doubled.
  static TorusGeometry doubled_axis(double L) { return {Vec3(2.0 * L, L, L)}; }
};

// Orthorhombic lattice spanned by axis-aligned generators (g1 e1, g2 e2, g3 e3).
struct LatticeSpec {
  Vec3 generators;

  double cell_volume() const { return generators.prod(); }

  bool is_cubic(double tol = 1e-12) const {
    return std::abs(generators[0] - generators[1]) <= tol * generators[0] &&
           std::abs(generators[1] - generators[2]) <= tol * generators[0];
  }
  // The doubled-axis family (4L, 2L, 2L); the rescaled form at L = 1/2 is (2, 1, 1).
  bool is_doubled_axis(double tol = 1e-12) const {
    return std::abs(generators[0] - 2.0 * generators[1]) <= tol * generators[0] &&
           std::abs(generators[1] - generators[2]) <= tol * generators[0];
  }
  // Half period L of the doubled-axis parametrization.
  double doubled_axis_L() const { return 0.5 * generators[1]; }

  static LatticeSpec cubic(double a) { return {Vec3(a, a, a)}; }
  static LatticeSpec doubled_axis(double L) { return {Vec3(4.0 * L, 2.0 * L, 2.0 * L)}; }
  // Rescaled lattice (2, 1, 1), i.e. doubled_axis at L = 1/2.
  static LatticeSpec rescaled() { return doubled_axis(0.5); }
};

// Fundamental cell centered at a lattice point: center + [-g1/2, g1/2] x ...
struct Cell {
  Vec3 center;
  Vec3 half_extents;
};

inline Cell cell_at(const LatticeSpec& lattice, const Vec3& y) {
  return Cell{y, 0.5 * lattice.generators};
}

// Canonical trace-free strain with A12 = A21 = 1.
inline Mat3 canonical_strain() {
  Mat3 a = Mat3::Zero();
  a(0, 1) = a(1, 0) = 1.0;
  return a;
}

// S^T A S; preserves symmetry and trace-freeness.
template <typename DS, typename DA>
Mat3 conjugate_strain(const Eigen::MatrixBase<DS>& s, const Eigen::MatrixBase<DA>& a) {
  return s.transpose() * a * s;
}

// The three lattice rotations that reverse the canonical strain (S^T A S = -A):
// diag(1,-1,-1), diag(-1,1,-1), and the quarter turn about e3.
inline std::array<Mat3, 3> strain_reversing_rotations() {
  Mat3 s1 = Mat3::Identity();
  s1(1, 1) = s1(2, 2) = -1.0;
  Mat3 s2 = Mat3::Identity();
  s2(0, 0) = s2(2, 2) = -1.0;
  Mat3 s3 = Mat3::Zero();
  s3(0, 1) = -1.0;
  s3(1, 0) = 1.0;
  s3(2, 2) = 1.0;
  return {s1, s2, s3};
}

// Skew generator of rotations about e3: M v = e3 x v.
inline Mat3 spin_generator() {
  Mat3 m = Mat3::Zero();
  m(0, 1) = -1.0;
  m(1, 0) = 1.0;
  return m;
}

// Rotation by angle about e3 (closed form of exp(angle * spin_generator())).
inline Mat3 rotation_about_e3(double angle) {
  Mat3 r = Mat3::Identity();
  const double c = std::cos(angle), s = std::sin(angle);
  r(0, 0) = c;
  r(0, 1) = -s;
  r(1, 0) = s;
  r(1, 1) = c;
  return r;
}

// True if S maps the lattice onto itself. S must be a signed permutation;
// the condition is that the permuted generator lengths match.
bool preserves_lattice(const Mat3& s, const LatticeSpec& lattice);

// All nonzero lattice points with |y|_inf <= radius, in lexicographic order
// (y1, then y2, then y3 ascending).
std::vector<Vec3> lattice_points_in_cube(const LatticeSpec& lattice, double radius);

// Minimal-image representative of x - y, each component in [-L_i, L_i).
Vec3 torus_displacement(const Vec3& x, const Vec3& y, const TorusGeometry& torus);

inline double torus_distance(const Vec3& x, const Vec3& y, const TorusGeometry& torus) {
  return torus_displacement(x, y, torus).norm();
}

}  // namespace pstokes

#endif  // PSTOKES_GEOMETRY_HPP
