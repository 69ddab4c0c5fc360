#include "pstokes/geometry.hpp"

#include <algorithm>

namespace pstokes {

bool preserves_lattice(const Mat3& s, const LatticeSpec& lattice) {
  // Signed permutation check: one +-1 entry per row and column.
  std::array<int, 3> perm{-1, -1, -1};
  for (int i = 0; i < 3; ++i) {
    int hits = 0;
    for (int j = 0; j < 3; ++j) {
      const double v = s(i, j);
      if (std::abs(v) == 1.0) {
        perm[i] = j;
        ++hits;
      } else if (v != 0.0) {
        return false;
      }
    }
    if (hits != 1) return false;
  }
  if (perm[0] == perm[1] || perm[1] == perm[2] || perm[0] == perm[2]) return false;
  // Row i of S reads coordinate perm[i]; the lattice maps to itself iff the
  // generator lengths agree along the permuted axes.
  for (int i = 0; i < 3; ++i) {
    if (std::abs(lattice.generators[i] - lattice.generators[perm[i]]) >
        1e-12 * lattice.generators[i]) {
      return false;
    }
  }
  return true;
}

std::vector<Vec3> lattice_points_in_cube(const LatticeSpec& lattice, double radius) {
  if (!(radius > 0.0)) throw PreconditionError("lattice_points_in_cube: radius must be > 0");
  const Vec3 g = lattice.generators;
  // Small slack so that points exactly on the cube boundary are kept.
  const auto count = [&](int axis) {
    return static_cast<std::int64_t>(std::floor(radius / g[axis] + 1e-9));
  };
  const std::int64_t n1 = count(0), n2 = count(1), n3 = count(2);
  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>((2 * n1 + 1) * (2 * n2 + 1) * (2 * n3 + 1)));
  for (std::int64_t i = -n1; i <= n1; ++i)
    for (std::int64_t j = -n2; j <= n2; ++j)
      for (std::int64_t l = -n3; l <= n3; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        points.emplace_back(static_cast<double>(i) * g[0], static_cast<double>(j) * g[1],
                            static_cast<double>(l) * g[2]);
      }
  return points;
}

Vec3 torus_displacement(const Vec3& x, const Vec3& y, const TorusGeometry& torus) {
  Vec3 d = x - y;
  for (int i = 0; i < 3; ++i) {
    const double period = 2.0 * torus.half_periods[i];
    d[i] -= period * std::floor(d[i] / period + 0.5);
    // floor maps the boundary case d = L to -L, giving the half-open convention [-L, L).
    if (d[i] >= torus.half_periods[i]) d[i] -= period;
  }
  return d;
}

}  // namespace pstokes
