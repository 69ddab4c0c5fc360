#include "pstokes/kernels.hpp"

#include "pstokes/quadrature.hpp"

namespace pstokes {

VelocityField make_sphere_strain_field(const Mat3& a) {
  VelocityField field;
  field.velocity = [a](const Vec3& x) { return sphere_strain_velocity(x, a); };
  field.curl = [a](const Vec3& x) { return sphere_strain_curl(x, a); };
  return field;
}

Vec3 ball_average_curl(const VelocityField& field, double radius, int order) {
  if (field.curl) {
    return ball_average(radius, order, field.curl);
  }
  const auto v = field.velocity;
  return ball_average(radius, order, [&](const Vec3& x) { return fd_curl(v, x); });
}

Mat3 fd_gradient(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double h) {
  Mat3 g;
  for (int j = 0; j < 3; ++j) {
    Vec3 dx = Vec3::Zero();
    dx[j] = h;
    g.col(j) = (f(x + dx) - f(x - dx)) / (2.0 * h);
  }
  return g;
}

Vec3 fd_curl(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double h) {
  const Mat3 g = fd_gradient(f, x, h);
  return Vec3(g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1));
}

double fd_divergence(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double h) {
  return fd_gradient(f, x, h).trace();
}

}  // namespace pstokes
