#include "pstokes/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace pstokes {

namespace {
constexpr double kPi = std::numbers::pi;
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: n must be >= 1");
  if (n == 1) {
    GaussLegendre gl;
    gl.nodes = Eigen::VectorXd::Zero(1);
    gl.weights = Eigen::VectorXd::Constant(1, 2.0);
    return gl;
  }
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussLegendre gl;
  gl.nodes = solver.eigenvalues();
  gl.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    gl.weights[i] = 2.0 * v0 * v0;
  }
  return gl;
}

SphereGrid sphere_trapezoid_grid(int order) {
  if (order < 2) throw PreconditionError("sphere_trapezoid_grid: order must be >= 2");
  const int ntheta = 2 * order;
  const int nphi = 4 * order;
  SphereGrid grid;
  grid.points.reserve(static_cast<std::size_t>(ntheta) * nphi);
  grid.weights.reserve(grid.points.capacity());
  const double wt = kPi / ntheta;
  const double wp = 2.0 * kPi / nphi;
  double total = 0.0;
  for (int i = 0; i < ntheta; ++i) {
    const double theta = kPi * (i + 0.5) / ntheta;
    const double st = std::sin(theta), ct = std::cos(theta);
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * kPi * j / nphi;
      grid.points.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
      grid.weights.push_back(st * wt * wp);
      total += grid.weights.back();
    }
  }
  // Pin the constant mode: rescale so the weights sum to 4 pi exactly.
  const double scale = 4.0 * kPi / total;
  for (double& w : grid.weights) w *= scale;
  return grid;
}

SphereGrid sphere_gauss_grid(int order) {
  if (order < 2) throw PreconditionError("sphere_gauss_grid: order must be >= 2");
  const GaussLegendre gl = gauss_legendre(order);
  const int nphi = 2 * order;
  SphereGrid grid;
  grid.points.reserve(static_cast<std::size_t>(order) * nphi);
  grid.weights.reserve(grid.points.capacity());
  const double wp = 2.0 * kPi / nphi;
  for (int i = 0; i < order; ++i) {
    const double ct = gl.nodes[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * kPi * j / nphi;
      grid.points.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
      grid.weights.push_back(gl.weights[i] * wp);
    }
  }
  return grid;
}

Vec3 ball_average(double radius, int order, const std::function<Vec3(const Vec3&)>& f) {
  if (order < 2) throw PreconditionError("ball_average: quadrature order must be >= 2");
  if (!(radius > 0.0)) throw PreconditionError("ball_average: radius must be > 0");
  const SphereGrid sphere = sphere_trapezoid_grid(order);
  const GaussLegendre gl = gauss_legendre(order);

  Vec3 total = Vec3::Zero();
  auto add_shell_panel = [&](double r0, double r1) {
    for (int a = 0; a < order; ++a) {
      const double r = 0.5 * (r0 + r1) + 0.5 * (r1 - r0) * gl.nodes[a];
      const double wr = 0.5 * (r1 - r0) * gl.weights[a] * r * r;
      Vec3 shell = Vec3::Zero();
      for (std::size_t s = 0; s < sphere.points.size(); ++s) {
        shell += sphere.weights[s] * f(r * sphere.points[s]);
      }
      total += wr * shell;
    }
  };
  if (radius > 1.0) {
    add_shell_panel(0.0, 1.0);
    add_shell_panel(1.0, radius);
  } else {
    add_shell_panel(0.0, radius);
  }
  const double volume = 4.0 / 3.0 * kPi * radius * radius * radius;
  return total / volume;
}

std::vector<Vec3> fibonacci_sphere_points(int n) {
  std::vector<Vec3> pts;
  pts.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

namespace {
double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0, result = 0.0;
  for (std::uint64_t i = index; i > 0; i /= base) {
    f /= static_cast<double>(base);
    result += f * static_cast<double>(i % base);
  }
  return result;
}
}  // namespace

std::vector<Vec3> halton_ball_points(int n) {
  std::vector<Vec3> pts;
  pts.reserve(n);
  std::uint64_t index = 1;
  while (static_cast<int>(pts.size()) < n) {
    const Vec3 p(2.0 * halton(index, 2) - 1.0, 2.0 * halton(index, 3) - 1.0,
                 2.0 * halton(index, 5) - 1.0);
    ++index;
    if (p.squaredNorm() <= 1.0) pts.push_back(p);
  }
  return pts;
}

}  // namespace pstokes
