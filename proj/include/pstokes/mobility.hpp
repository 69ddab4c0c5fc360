#ifndef PSTOKES_MOBILITY_HPP
#define PSTOKES_MOBILITY_HPP

#include <vector>

#include "pstokes/common.hpp"
#include "pstokes/geometry.hpp"
#include "pstokes/lattice_sum.hpp"

namespace pstokes {

// curl at the origin contributed by the periodic image at lattice point y of
// a unit-strength single-sphere strain field: 5 (Ay ^ y)/|y|^5.
template <typename DY, typename DA>
Eigen::Matrix<typename DY::Scalar, 3, 1> curl_image_kernel(const Eigen::MatrixBase<DY>& y,
                                                           const Eigen::MatrixBase<DA>& a) {
  using Scalar = typename DY::Scalar;
  const Scalar r2 = y.squaredNorm();
  if (r2 == 0) throw SingularPointError("curl_image_kernel: y = 0");
  const Scalar r5 = r2 * r2 * std::sqrt(r2);
  const Eigen::Matrix<Scalar, 3, 1> ay = a * y;
  return Scalar(5) * ay.cross(y.derived()) / r5;
}

// Returns the scalar lambda with A = lambda * canonical_strain(), or throws
// UnsupportedError when A is not in that one-dimensional family.
double strain_multiple_of_canonical(const Mat3& a);

struct CurlOrigin {
  Vec3 value;          // components 1, 2 are exact zeros by symmetry
  BoundedValue third;  // rigorous interval for the third component
};

// curl of the renormalized image superposition at the origin, for the cubic
// family (exact zero) or the doubled-axis family (third component
// 5 c0 / L^3 with the Lemma-type interval). Strains must be multiples of the
// canonical one.
CurlOrigin renormalized_curl_origin(const LatticeSpec& lattice, const Mat3& a, int k,
                                    const SumOptions& opts = {});

struct AngularVelocity {
  Vec3 omega;
  BoundedValue third;
};

// Half the leading-order curl for a sphere of radius R in a unit torus:
// zero on the cubic torus, (R^3/2) * (curl at origin for L = 1) * e3 on the
// doubled-axis torus. Requires 0 < R < 1/2.
AngularVelocity torus_angular_velocity(const TorusGeometry& torus, const Mat3& a, double R,
                                       int k, const SumOptions& opts = {});

// Plain truncated sum of curl_image_kernel over 0 < |y|_inf <= 2k, in
// deterministic lexicographic order with compensation.
Vec3 direct_curl_sum(const LatticeSpec& lattice, const Mat3& a, int k);

// Same sum with terms grouped into orbits of the swap/reflection group so
// every orbit cancels bitwise; the result is exactly zero on any lattice
// with g1 = g2 (in particular cubic ones).
Vec3 curl_sum_swap_paired(const LatticeSpec& lattice, const Mat3& a, int k);

// Max-norm discrepancy of the truncated sums in
//   omega[S^T A S] = S^T omega[A];
// rejects rotations that do not map the lattice to itself.
double symmetry_discrepancy(const Mat3& s, const Mat3& a, const LatticeSpec& lattice, int k);

// Gradient of the renormalized image superposition (cell means telescoped to
// one outer-box surface integral):
//   grad(x) = (20 pi/3) [ -(1/|Q|) int_{dR_k} v(x-z) (x) n dS - sum_y G(x-y) ].
Mat3 superposition_gradient(const LatticeSpec& lattice, const Mat3& a, const Vec3& x, int k,
                            int face_order = 24);

// Sum over nonzero lattice points of the degree -5 remainder gradient;
// absolutely convergent, no renormalization needed.
Mat3 remainder_gradient_sum(const LatticeSpec& lattice, const Mat3& a, const Vec3& x, int k);

struct DecayProbeReport {
  std::vector<double> box_sizes;
  // Sup over sample points in the unit ball of the three diagnostics:
  // | sum grad R |, | grad u~ - grad u~(0) |, | grad u~ | (Frobenius).
  std::vector<double> norm_remainder_sum;
  std::vector<double> norm_gradient_centered;
  std::vector<double> norm_gradient;
  double slope_remainder_sum = 0.0;      // expected near -5
  double slope_gradient_centered = 0.0;  // expected near -4
  double slope_gradient = 0.0;           // expected near -3
};

struct DecayProbeOptions {
  int sample_count = 512;
  int k_images = 24;
  int face_order = 24;
  int threads = 1;
};

// Evaluates the three decay diagnostics over the doubled-axis lattices at the
// given box sizes (all >= 4, at least 4 of them) and fits log-log slopes.
DecayProbeReport decay_probe(const std::vector<double>& box_sizes,
                             const DecayProbeOptions& opts = {});

// L2 norm over the unit ball of the strain deficit A - D(ubar),
//   D(ubar) = A + sym(sum grad R) + sym(grad u~) inside B.
// Decays like L^-3.
double strain_deficit_l2(double L, int k, int order = 6);

}  // namespace pstokes

#endif  // PSTOKES_MOBILITY_HPP
