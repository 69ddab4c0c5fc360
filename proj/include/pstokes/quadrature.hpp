#ifndef PSTOKES_QUADRATURE_HPP
#define PSTOKES_QUADRATURE_HPP

#include <functional>
#include <type_traits>
#include <vector>

#include "pstokes/common.hpp"
#include "pstokes/geometry.hpp"

namespace pstokes {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights the
// squared first eigenvector components. Deterministic for fixed n.
GaussLegendre gauss_legendre(int n);

// Quadrature grid on the unit sphere; weights sum to ~4*pi.
struct SphereGrid {
  std::vector<Vec3> points;
  std::vector<double> weights;

  template <typename F>
  auto integrate(F&& f) const {
    using Result = std::remove_cvref_t<std::invoke_result_t<F&, const Vec3&>>;
    Result acc = Result(f(points[0]) * weights[0]);
    for (std::size_t i = 1; i < points.size(); ++i) acc += f(points[i]) * weights[i];
    return acc;
  }
};

// Product trapezoid grid: midpoint in the polar angle, uniform in azimuth.
// The azimuthal sums annihilate low spherical harmonics exactly, which is
// what the ball-average checks rely on.
SphereGrid sphere_trapezoid_grid(int order);

// Gauss-Legendre in cos(theta) x uniform azimuth; spectrally accurate for
// smooth densities, used for orientation-density quadrature.
SphereGrid sphere_gauss_grid(int order);

// Tensor Gauss-Legendre integral of f over an axis-aligned box.
template <typename F>
double box_integrate(const Cell& box, int order, F&& f) {
  if (order < 2) throw PreconditionError("box_integrate: order must be >= 2");
  const GaussLegendre gl = gauss_legendre(order);
  double sum = 0.0;
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c) {
        const Vec3 z = box.center + Vec3(gl.nodes[a] * box.half_extents[0],
                                         gl.nodes[b] * box.half_extents[1],
                                         gl.nodes[c] * box.half_extents[2]);
        sum += gl.weights[a] * gl.weights[b] * gl.weights[c] * f(z);
      }
  return sum * box.half_extents.prod();
}

// 2D tensor Gauss-Legendre over the rectangle spanned by (center; u, v sides),
// where u_half/v_half are the in-plane half extents along unit axes au, av.
template <typename F>
auto rectangle_integrate(const Vec3& center, const Vec3& au, double u_half, const Vec3& av,
                         double v_half, int order, F&& f) {
  using Result = std::remove_cvref_t<std::invoke_result_t<F&, const Vec3&>>;
  const GaussLegendre gl = gauss_legendre(order);
  Result acc = Result(f(center) * 0.0);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const Vec3 p = center + gl.nodes[a] * u_half * au + gl.nodes[b] * v_half * av;
      acc += gl.weights[a] * gl.weights[b] * f(p);
    }
  return Result(acc * (u_half * v_half));
}

// Average of a vector field over the ball B_R, radial Gauss-Legendre times a
// sphere grid. The radial rule is split at r = 1 so that fields with a kink
// on the unit sphere are integrated panel-wise.
Vec3 ball_average(double radius, int order, const std::function<Vec3(const Vec3&)>& f);

// Deterministic quasi-uniform points: Fibonacci sphere and Halton ball.
std::vector<Vec3> fibonacci_sphere_points(int n);
std::vector<Vec3> halton_ball_points(int n);

}  // namespace pstokes

#endif  // PSTOKES_QUADRATURE_HPP
