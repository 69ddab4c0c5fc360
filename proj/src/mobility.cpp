#include "pstokes/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pstokes/kernels.hpp"
#include "pstokes/quadrature.hpp"
#include "pstokes/reduction.hpp"

namespace pstokes {

namespace {
constexpr double kPi = std::numbers::pi;

struct IntRange {
  std::int64_t n1, n2, n3;
  double cutoff;
};

IntRange cube_range(const LatticeSpec& lattice, int k) {
  if (k < 1) throw PreconditionError("mobility: k must be >= 1");
  const double cutoff = 2.0 * k * lattice.generators.minCoeff();
  const auto extent = [&](int axis) {
    return static_cast<std::int64_t>(std::floor(cutoff / lattice.generators[axis] + 1e-9));
  };
  return {extent(0), extent(1), extent(2), cutoff};
}
}  // namespace

double strain_multiple_of_canonical(const Mat3& a) {
  const double lambda = a(0, 1);
  const Mat3 rest = a - lambda * canonical_strain();
  if (rest.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, std::abs(lambda)))
    throw UnsupportedError(
        "strain must be a scalar multiple of the canonical strain (conjugates reduce to +-A)");
  return lambda;
}

CurlOrigin renormalized_curl_origin(const LatticeSpec& lattice, const Mat3& a, int k,
                                    const SumOptions& opts) {
  const double lambda = strain_multiple_of_canonical(a);
  CurlOrigin result;
  result.value = Vec3::Zero();
  if (lattice.is_cubic()) {
    // All three components vanish by the strain-reversing rotations.
    result.third = BoundedValue{0.0, 0.0, 0.0};
    return result;
  }
  if (!lattice.is_doubled_axis())
    throw UnsupportedError("renormalized_curl_origin: lattice must be cubic or doubled-axis");
  const double L = lattice.doubled_axis_L();
  const LatticeConstants constants = lattice_constants(k, opts);
  // Third component: 5 c0 / L^3, scaled by the strain multiple. Components
  // 1 and 2 are exact zeros (reflections S1, S2 preserve this lattice).
  const double scale = lambda * 5.0 / (L * L * L);
  result.third = constants.c0.scaled(scale);
  result.value[2] = result.third.estimate;
  return result;
}

AngularVelocity torus_angular_velocity(const TorusGeometry& torus, const Mat3& a, double R,
                                       int k, const SumOptions& opts) {
  if (!(R > 0.0 && R < 0.5))
    throw PreconditionError("torus_angular_velocity: R must lie in (0, 1/2)");
  const Vec3 hp = torus.half_periods;
  const bool cubic = std::abs(hp[0] - hp[1]) <= 1e-12 && std::abs(hp[1] - hp[2]) <= 1e-12;
  AngularVelocity result;
  if (cubic) {
    strain_multiple_of_canonical(a);
    result.omega = Vec3::Zero();
    result.third = BoundedValue{0.0, 0.0, 0.0};
    return result;
  }
  if (!(std::abs(hp[0] - 2.0 * hp[1]) <= 1e-12 && std::abs(hp[1] - hp[2]) <= 1e-12))
    throw UnsupportedError("torus_angular_velocity: torus must be cubic or doubled-axis");
  // Leading order: omega = (R^3/2) * curl(0; L = 1) with the image lattice of
  // the doubled-axis torus rescaled to unit half period.
  const LatticeSpec unit_lattice = LatticeSpec::doubled_axis(hp[1]);
  const CurlOrigin curl = renormalized_curl_origin(unit_lattice, a, k, opts);
  const double factor = 0.5 * R * R * R;
  result.third = curl.third.scaled(factor);
  result.omega = factor * curl.value;
  return result;
}

Vec3 direct_curl_sum(const LatticeSpec& lattice, const Mat3& a, int k) {
  const IntRange range = cube_range(lattice, k);
  const Vec3 g = lattice.generators;
  KahanSum comp[3];
  for (std::int64_t i = -range.n1; i <= range.n1; ++i)
    for (std::int64_t j = -range.n2; j <= range.n2; ++j)
      for (std::int64_t l = -range.n3; l <= range.n3; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        const Vec3 y(static_cast<double>(i) * g[0], static_cast<double>(j) * g[1],
                     static_cast<double>(l) * g[2]);
        const Vec3 term = curl_image_kernel(y, a);
        for (int c = 0; c < 3; ++c) comp[c].add(term[c]);
      }
  return Vec3(comp[0].value(), comp[1].value(), comp[2].value());
}

Vec3 curl_sum_swap_paired(const LatticeSpec& lattice, const Mat3& a, int k) {
  if (std::abs(lattice.generators[0] - lattice.generators[1]) >
      1e-12 * lattice.generators[0])
    throw UnsupportedError("curl_sum_swap_paired: needs g1 = g2 for the swap pairing");
  const IntRange range = cube_range(lattice, k);
  const Vec3 g = lattice.generators;
  const auto kernel = [&](std::int64_t i, std::int64_t j, std::int64_t l) {
    return curl_image_kernel(Vec3(static_cast<double>(i) * g[0], static_cast<double>(j) * g[1],
                                  static_cast<double>(l) * g[2]),
                             a);
  };
  Vec3 total = Vec3::Zero();
  // Orbits of {id, swap12, flip3, swap12*flip3} over representatives with
  // i >= j, l >= 0. Summing (K(y) + K(swap y)) + (K(flip y) + K(swap flip y))
  // cancels bitwise: IEEE addition is commutative and x + (-x) = 0.
  for (std::int64_t i = -range.n1; i <= range.n1; ++i)
    for (std::int64_t j = -range.n2; j <= std::min(i, range.n2); ++j)
      for (std::int64_t l = 0; l <= range.n3; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        const bool swap_fixed = (i == j);
        const bool flip_fixed = (l == 0);
        Vec3 orbit = kernel(i, j, l);
        if (!swap_fixed) orbit += kernel(j, i, l);
        if (!flip_fixed) {
          Vec3 mirrored = kernel(i, j, -l);
          if (!swap_fixed) mirrored += kernel(j, i, -l);
          orbit += mirrored;
        }
        total += orbit;
      }
  return total;
}

double symmetry_discrepancy(const Mat3& s, const Mat3& a, const LatticeSpec& lattice, int k) {
  if (!preserves_lattice(s, lattice))
    throw UnsupportedError("symmetry_discrepancy: rotation does not preserve the lattice");
  const Vec3 omega_conjugate = direct_curl_sum(lattice, conjugate_strain(s, a), k);
  const Vec3 omega = direct_curl_sum(lattice, a, k);
  return (omega_conjugate - s.transpose() * omega).cwiseAbs().maxCoeff();
}

Mat3 superposition_gradient(const LatticeSpec& lattice, const Mat3& a, const Vec3& x, int k,
                            int face_order) {
  if (!lattice.is_doubled_axis() && !lattice.is_cubic())
    throw UnsupportedError("superposition_gradient: unsupported lattice family");
  const IntRange range = cube_range(lattice, k);
  const Vec3 g = lattice.generators;

  Mat3 lattice_part = Mat3::Zero();
  for (std::int64_t i = -range.n1; i <= range.n1; ++i)
    for (std::int64_t j = -range.n2; j <= range.n2; ++j)
      for (std::int64_t l = -range.n3; l <= range.n3; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        const Vec3 y(static_cast<double>(i) * g[0], static_cast<double>(j) * g[1],
                     static_cast<double>(l) * g[2]);
        lattice_part -= stresslet_gradient(x - y, a);
      }

  // Outer box: the union of the cells of all points in the cube.
  const Vec3 outer_half(range.n1 * g[0] + 0.5 * g[0], range.n2 * g[1] + 0.5 * g[1],
                        range.n3 * g[2] + 0.5 * g[2]);
  const double cell_volume = lattice.cell_volume();
  Mat3 face_part = Mat3::Zero();
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    Vec3 au = Vec3::Zero(), av = Vec3::Zero(), an = Vec3::Zero();
    au[u] = 1.0;
    av[v] = 1.0;
    an[axis] = 1.0;
    for (int side = -1; side <= 1; side += 2) {
      const Vec3 center = side * outer_half[axis] * an;
      const Vec3 face_integral =
          rectangle_integrate(center, au, outer_half[u], av, outer_half[v], face_order,
                              [&](const Vec3& z) -> Vec3 { return stresslet_velocity(x - z, a); });
      face_part.col(axis) -= side / cell_volume * face_integral;
    }
  }
  return (20.0 * kPi / 3.0) * (lattice_part + face_part);
}

Mat3 remainder_gradient_sum(const LatticeSpec& lattice, const Mat3& a, const Vec3& x, int k) {
  const IntRange range = cube_range(lattice, k);
  const Vec3 g = lattice.generators;
  Mat3 sum = Mat3::Zero();
  for (std::int64_t i = -range.n1; i <= range.n1; ++i)
    for (std::int64_t j = -range.n2; j <= range.n2; ++j)
      for (std::int64_t l = -range.n3; l <= range.n3; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        const Vec3 y(static_cast<double>(i) * g[0], static_cast<double>(j) * g[1],
                     static_cast<double>(l) * g[2]);
        sum += sphere_remainder_gradient(x - y, a);
      }
  return sum;
}

namespace {

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

DecayProbeReport decay_probe(const std::vector<double>& box_sizes,
                             const DecayProbeOptions& opts) {
  if (box_sizes.size() < 4)
    throw PreconditionError("decay_probe: at least 4 box sizes are required for a fit");
  for (double L : box_sizes)
    if (!(L >= 4.0)) throw PreconditionError("decay_probe: box sizes must be >= 4");

  const Mat3 a = canonical_strain();
  const std::vector<Vec3> samples = halton_ball_points(opts.sample_count);

  DecayProbeReport report;
  report.box_sizes = box_sizes;
  for (double L : box_sizes) {
    const LatticeSpec lattice = LatticeSpec::doubled_axis(L);
    const Mat3 grad_origin =
        superposition_gradient(lattice, a, Vec3::Zero(), opts.k_images, opts.face_order);
    std::vector<double> rem(samples.size()), centered(samples.size()), grad(samples.size());
    parallel_for_blocks(samples.size(), opts.threads, [&](std::size_t s) {
      const Vec3& x = samples[s];
      rem[s] = remainder_gradient_sum(lattice, a, x, opts.k_images).norm();
      const Mat3 gx = superposition_gradient(lattice, a, x, opts.k_images, opts.face_order);
      centered[s] = (gx - grad_origin).norm();
      grad[s] = gx.norm();
    });
    report.norm_remainder_sum.push_back(*std::max_element(rem.begin(), rem.end()));
    report.norm_gradient_centered.push_back(*std::max_element(centered.begin(), centered.end()));
    report.norm_gradient.push_back(*std::max_element(grad.begin(), grad.end()));
  }
  report.slope_remainder_sum = fit_loglog_slope(report.box_sizes, report.norm_remainder_sum);
  report.slope_gradient_centered =
      fit_loglog_slope(report.box_sizes, report.norm_gradient_centered);
  report.slope_gradient = fit_loglog_slope(report.box_sizes, report.norm_gradient);
  return report;
}

double strain_deficit_l2(double L, int k, int order) {
  if (!(L >= 4.0)) throw PreconditionError("strain_deficit_l2: L must be >= 4");
  const Mat3 a = canonical_strain();
  const LatticeSpec lattice = LatticeSpec::doubled_axis(L);
  const SphereGrid sphere = sphere_trapezoid_grid(order);
  const GaussLegendre gl = gauss_legendre(order);
  double total = 0.0;
  for (int r = 0; r < order; ++r) {
    const double radius = 0.5 + 0.5 * gl.nodes[r];
    const double wr = 0.5 * gl.weights[r] * radius * radius;
    for (std::size_t s = 0; s < sphere.points.size(); ++s) {
      const Vec3 x = radius * sphere.points[s];
      const Mat3 deficit = remainder_gradient_sum(lattice, a, x, k) +
                           superposition_gradient(lattice, a, x, k, 16);
      const Mat3 sym = 0.5 * (deficit + deficit.transpose());
      total += wr * sphere.weights[s] * sym.squaredNorm();
    }
  }
  return std::sqrt(total);
}

}  // namespace pstokes
