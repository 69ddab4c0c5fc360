#ifndef PSTOKES_KERNELS_HPP
#define PSTOKES_KERNELS_HPP

#include <cmath>
#include <functional>

#include "pstokes/common.hpp"

namespace pstokes {

namespace detail {
template <typename Derived>
void require_nonzero(const Eigen::MatrixBase<Derived>& x, const char* where) {
  if (x.derived().squaredNorm() == 0) throw SingularPointError(where);
}
}  // namespace detail

// Fundamental solution of the steady Stokes equations,
//   Phi(x) = (1/8pi) (Id/|x| + x (x)T /|x|^3).
// Symmetric, even, homogeneous of degree -1.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 3> oseen_tensor(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  detail::require_nonzero(x, "oseen_tensor: x = 0");
  const Scalar r2 = x.squaredNorm();
  const Scalar r = std::sqrt(r2);
  const Scalar c = Scalar(1) / (Scalar(8) * Scalar(EIGEN_PI));
  Eigen::Matrix<Scalar, 3, 3> phi =
      (Eigen::Matrix<Scalar, 3, 3>::Identity() / r + (x * x.transpose()) / (r2 * r));
  return c * phi;
}

// Velocity of the symmetric force dipole (stresslet) with strength A:
//   (grad Phi : A)_i = -(3/8pi) x_i (x.Ax) / |x|^5.
// Odd, homogeneous of degree -2, divergence free.
template <typename DX, typename DA>
Eigen::Matrix<typename DX::Scalar, 3, 1> stresslet_velocity(const Eigen::MatrixBase<DX>& x,
                                                            const Eigen::MatrixBase<DA>& a) {
  using Scalar = typename DX::Scalar;
  detail::require_nonzero(x, "stresslet_velocity: x = 0");
  const Scalar r2 = x.squaredNorm();
  const Scalar r5 = r2 * r2 * std::sqrt(r2);
  const Scalar quad = x.dot(a * x);
  return (Scalar(-3) / (Scalar(8) * Scalar(EIGEN_PI))) * (quad / r5) * x;
}

// Spatial gradient of the stresslet velocity, G_ij = d_j v_i.
// Trace free; homogeneous of degree -3.
template <typename DX, typename DA>
Eigen::Matrix<typename DX::Scalar, 3, 3> stresslet_gradient(const Eigen::MatrixBase<DX>& x,
                                                            const Eigen::MatrixBase<DA>& a) {
  using Scalar = typename DX::Scalar;
  using Vec = Eigen::Matrix<Scalar, 3, 1>;
  detail::require_nonzero(x, "stresslet_gradient: x = 0");
  const Scalar r2 = x.squaredNorm();
  const Scalar r5 = r2 * r2 * std::sqrt(r2);
  const Scalar r7 = r5 * r2;
  const Vec ax = a * x;
  const Scalar quad = x.dot(ax);
  const Scalar c = Scalar(-3) / (Scalar(8) * Scalar(EIGEN_PI));
  Eigen::Matrix<Scalar, 3, 3> g =
      (quad / r5) * Eigen::Matrix<Scalar, 3, 3>::Identity() +
      (Scalar(2) / r5) * (x * ax.transpose()) - (Scalar(5) * quad / r7) * (x * x.transpose());
  return c * g;
}

// curl of the stresslet velocity: -(3/4pi) (Ax ^ x) / |x|^5.
// Even, homogeneous of degree -3. For the canonical strain the third
// component is (3/4pi) (x1^2 - x2^2)/|x|^5.
template <typename DX, typename DA>
Eigen::Matrix<typename DX::Scalar, 3, 1> stresslet_curl(const Eigen::MatrixBase<DX>& x,
                                                        const Eigen::MatrixBase<DA>& a) {
  using Scalar = typename DX::Scalar;
  detail::require_nonzero(x, "stresslet_curl: x = 0");
  const Scalar r2 = x.squaredNorm();
  const Scalar r5 = r2 * r2 * std::sqrt(r2);
  const Eigen::Matrix<Scalar, 3, 1> ax = a * x;
  return (Scalar(-3) / (Scalar(4) * Scalar(EIGEN_PI))) * ax.cross(x.derived()) / r5;
}

// Degree -4 remainder of the single-sphere strain solution:
//   R[A](x) = Ax/|x|^5 - (5/2) (x.Ax) x / |x|^7.
// A potential flow (curl free, divergence free away from 0); the coefficients
// are pinned by the boundary condition w = Ax on |x| = 1.
template <typename DX, typename DA>
Eigen::Matrix<typename DX::Scalar, 3, 1> sphere_remainder(const Eigen::MatrixBase<DX>& x,
                                                          const Eigen::MatrixBase<DA>& a) {
  using Scalar = typename DX::Scalar;
  detail::require_nonzero(x, "sphere_remainder: x = 0");
  const Scalar r2 = x.squaredNorm();
  const Scalar r5 = r2 * r2 * std::sqrt(r2);
  const Scalar r7 = r5 * r2;
  const Eigen::Matrix<Scalar, 3, 1> ax = a * x;
  const Scalar quad = x.dot(ax);
  return ax / r5 - (Scalar(5) / Scalar(2)) * (quad / r7) * x;
}

// Gradient of sphere_remainder, d_j R_i. Homogeneous of degree -5.
template <typename DX, typename DA>
Eigen::Matrix<typename DX::Scalar, 3, 3> sphere_remainder_gradient(
    const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DA>& a) {
  using Scalar = typename DX::Scalar;
  using Vec = Eigen::Matrix<Scalar, 3, 1>;
  detail::require_nonzero(x, "sphere_remainder_gradient: x = 0");
  const Scalar r2 = x.squaredNorm();
  const Scalar r5 = r2 * r2 * std::sqrt(r2);
  const Scalar r7 = r5 * r2;
  const Scalar r9 = r7 * r2;
  const Vec ax = a * x;
  const Scalar quad = x.dot(ax);
  Eigen::Matrix<Scalar, 3, 3> g = a.derived() / r5;
  g -= (Scalar(5) / r7) * (ax * x.transpose());
  g -= (Scalar(5) / r7) * (x * ax.transpose());
  g -= (Scalar(5) * quad / (Scalar(2) * r7)) * Eigen::Matrix<Scalar, 3, 3>::Identity();
  g += (Scalar(35) * quad / (Scalar(2) * r9)) * (x * x.transpose());
  return g;
}

// Rigid-sphere strain solution: w = Ax inside the unit ball, and
//   w(x) = (5/2) (x.Ax) x / |x|^5 + R[A](x)
// outside (equivalently -(20pi/3) grad Phi : A + R[A]). Continuous across
// |x| = 1.
template <typename DX, typename DA>
Eigen::Matrix<typename DX::Scalar, 3, 1> sphere_strain_velocity(const Eigen::MatrixBase<DX>& x,
                                                                const Eigen::MatrixBase<DA>& a) {
  using Scalar = typename DX::Scalar;
  const Scalar r2 = x.squaredNorm();
  if (r2 <= Scalar(1)) return a * x;
  const Scalar r5 = r2 * r2 * std::sqrt(r2);
  const Eigen::Matrix<Scalar, 3, 1> ax = a * x;
  const Scalar quad = x.dot(ax);
  return (Scalar(5) / Scalar(2)) * (quad / r5) * x +
         sphere_remainder(x.derived().eval(), a.derived().eval());
}

// curl of sphere_strain_velocity: zero in the rigid region, and outside equal
// to the stresslet part's curl, 5 (Ax ^ x)/|x|^5 (the remainder is a gradient).
template <typename DX, typename DA>
Eigen::Matrix<typename DX::Scalar, 3, 1> sphere_strain_curl(const Eigen::MatrixBase<DX>& x,
                                                            const Eigen::MatrixBase<DA>& a) {
  using Scalar = typename DX::Scalar;
  using Vec = Eigen::Matrix<Scalar, 3, 1>;
  const Scalar r2 = x.squaredNorm();
  if (r2 <= Scalar(1)) return Vec::Zero();
  const Scalar r5 = r2 * r2 * std::sqrt(r2);
  const Vec ax = a * x;
  return Scalar(5) * ax.cross(x.derived()) / r5;
}

// A velocity field with an optional analytic curl. When no curl is supplied,
// ball_average_curl falls back to central finite differences of velocity.
struct VelocityField {
  std::function<Vec3(const Vec3&)> velocity;
  std::function<Vec3(const Vec3&)> curl;  // may be empty
};

VelocityField make_sphere_strain_field(const Mat3& a);

// Average of curl(field) over the ball B_R, radius >= the rigid region is
// allowed because curl vanishes identically there.
Vec3 ball_average_curl(const VelocityField& field, double radius, int order);

// Central finite-difference helpers used by the consistency checks.
Vec3 fd_curl(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double h = 1e-5);
double fd_divergence(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double h = 1e-5);
Mat3 fd_gradient(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double h = 1e-5);

}  // namespace pstokes

#endif  // PSTOKES_KERNELS_HPP
