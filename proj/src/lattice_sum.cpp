#include "pstokes/lattice_sum.hpp"

#include <limits>
#include <numbers>

#include "pstokes/quadrature.hpp"
#include "pstokes/reduction.hpp"

namespace pstokes {

namespace {

constexpr double kPi = std::numbers::pi;

struct CubeRange {
  std::int64_t n1, n2, n3;  // per-axis integer extents
  double radius;            // cube radius in length units
};

CubeRange cube_range(const LatticeSpec& lattice, int k) {
  if (k < 1) throw PreconditionError("partial_sum_cube: k must be >= 1");
  const double radius = 2.0 * k * lattice.generators.minCoeff();
  const auto extent = [&](int axis) {
    return static_cast<std::int64_t>(std::floor(radius / lattice.generators[axis] + 1e-9));
  };
  return {extent(0), extent(1), extent(2), radius};
}

}  // namespace

double partial_sum_cube(const LatticeSpec& lattice, int k, const SumOptions& opts) {
  if (k < 1) throw PreconditionError("partial_sum_cube: k must be >= 1");
  const Vec3 g = lattice.generators;
  const double gmin = g.minCoeff();
  const int n_shells = 2 * k;

  // Shell m holds the points with |y|_inf in ((m-1)*gmin, m*gmin]; each shell
  // is summed lexicographically with compensation into its own slot.
  std::vector<double> shell_sums(static_cast<std::size_t>(n_shells), 0.0);
  auto sum_shell = [&](std::size_t shell) {
    const double r_hi = (static_cast<double>(shell) + 1.0) * gmin + 1e-9 * gmin;
    const double r_lo = static_cast<double>(shell) * gmin + 1e-9 * gmin;
    const auto extent = [&](int axis) {
      return static_cast<std::int64_t>(std::floor(r_hi / g[axis]));
    };
    const std::int64_t m1 = extent(0), m2 = extent(1), m3 = extent(2);
    KahanSum acc;
    for (std::int64_t i = -m1; i <= m1; ++i) {
      const double y1 = static_cast<double>(i) * g[0];
      for (std::int64_t j = -m2; j <= m2; ++j) {
        const double y2 = static_cast<double>(j) * g[1];
        for (std::int64_t l = -m3; l <= m3; ++l) {
          if (i == 0 && j == 0 && l == 0) continue;
          const double y3 = static_cast<double>(l) * g[2];
          const double norm_inf = std::max({std::abs(y1), std::abs(y2), std::abs(y3)});
          if (norm_inf <= r_lo || norm_inf > r_hi) continue;
          acc.add(summand(y1, y2, y3));
        }
      }
    }
    shell_sums[shell] = acc.value();
  };

  parallel_for_blocks(shell_sums.size(), opts.threads, sum_shell);

  if (opts.deterministic) return pairwise_tree_reduce(std::move(shell_sums));
  double sum = 0.0;
  for (double s : shell_sums) sum += s;
  return sum;
}

double partial_sum_cube_naive(const LatticeSpec& lattice, int k) {
  const CubeRange range = cube_range(lattice, k);
  const Vec3 g = lattice.generators;
  double sum = 0.0;
  for (std::int64_t i = -range.n1; i <= range.n1; ++i)
    for (std::int64_t j = -range.n2; j <= range.n2; ++j)
      for (std::int64_t l = -range.n3; l <= range.n3; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        sum += summand(static_cast<double>(i) * g[0], static_cast<double>(j) * g[1],
                       static_cast<double>(l) * g[2]);
      }
  return sum;
}

double partial_sum_roundoff_slack(const LatticeSpec& lattice, int k) {
  const CubeRange range = cube_range(lattice, k);
  const Vec3 g = lattice.generators;
  KahanSum abs_sum;
  std::int64_t n_terms = 0;
  for (std::int64_t i = -range.n1; i <= range.n1; ++i)
    for (std::int64_t j = -range.n2; j <= range.n2; ++j)
      for (std::int64_t l = -range.n3; l <= range.n3; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        abs_sum.add(std::abs(summand(static_cast<double>(i) * g[0],
                                     static_cast<double>(j) * g[1],
                                     static_cast<double>(l) * g[2])));
        ++n_terms;
      }
  return static_cast<double>(n_terms) * std::numeric_limits<double>::epsilon() * abs_sum.value();
}

double tail_bound_outside(int k) {
  if (k < 2) throw PreconditionError("tail_bound: k must be >= 2 (4k - 5 > 0 required)");
  const double a = 4.0 * k - 2.0;
  const double b = 4.0 * k - 5.0;
  return 84.0 * kPi * a * a / (b * b * b);
}

double tail_bound(int k) {
  return 4.0 / (4.0 * k + 1.0) + tail_bound_outside(k);
}

double slab_integral(int k, int order) {
  if (k < 1) throw PreconditionError("slab_integral: k must be >= 1");
  const double kk = static_cast<double>(k);
  Cell slab;
  slab.center = Vec3(2.0 * kk + 0.75, 0.0, 0.0);
  slab.half_extents = Vec3(0.25, 2.0 * kk + 0.5, 2.0 * kk + 0.5);
  return box_integrate(slab, order, [](const Vec3& z) { return summand(z); });
}

double sphere_integral_summand(int order) {
  const SphereGrid grid = sphere_trapezoid_grid(order);
  KahanSum acc;
  for (std::size_t i = 0; i < grid.points.size(); ++i)
    acc.add(grid.weights[i] * summand(grid.points[i]));
  return acc.value();
}

double annulus_integral_summand(double r_inner, double r_outer, int order) {
  if (!(0.0 < r_inner && r_inner <= r_outer))
    throw PreconditionError("annulus_integral_summand: need 0 < r_inner <= r_outer");
  // int_{a<|z|<b} S dz = (int_{S^2} S dsigma) * log(b/a) by degree -3 homogeneity.
  return sphere_integral_summand(order) * std::log(r_outer / r_inner);
}

namespace {

// Principal-value integral of S over a box containing the origin. Radially,
// S(r sigma) r^2 = S(sigma)/r, so the PV over the box equals
//   int_{S^2} S(sigma) log(rho(sigma)) dsigma
// with rho the exit radius; the log(delta) term carries the exactly-zero
// spherical mean. Pulled back to the box faces this becomes
//   sum_faces h_f int_face S(p) log|p| dA,
// a smooth integrand on each face.
double pv_box_integral_origin(const Cell& box, int order) {
  double total = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    Vec3 au = Vec3::Zero(), av = Vec3::Zero(), an = Vec3::Zero();
    au[u] = 1.0;
    av[v] = 1.0;
    an[axis] = 1.0;
    const double h = box.half_extents[axis];
    for (int side = -1; side <= 1; side += 2) {
      const Vec3 center = box.center + side * h * an;
      total += h * rectangle_integrate(center, au, box.half_extents[u], av, box.half_extents[v],
                                       order, [](const Vec3& p) {
                                         return summand(p) * std::log(p.norm());
                                       });
    }
  }
  return total;
}

}  // namespace

double cell_average_summand(const Cell& cell, int order, double pv_delta) {
  if (order < 2) throw PreconditionError("cell_average_summand: order must be >= 2");
  const double volume = 8.0 * cell.half_extents.prod();
  const bool at_origin = cell.center.lpNorm<Eigen::Infinity>() == 0.0;
  if (at_origin) {
    if (!(pv_delta > 0.0 && pv_delta <= 0.5))
      throw PreconditionError("cell_average_summand: pv_delta must lie in (0, 1/2]");
    return pv_box_integral_origin(cell, order) / volume;
  }
  // Cells away from the origin must not contain it.
  if (((cell.center.cwiseAbs() - cell.half_extents).array() < 0.0).all())
    throw PreconditionError("cell_average_summand: cell strictly contains the singularity");
  return box_integrate(cell, order, [](const Vec3& z) { return summand(z); }) / volume;
}

BoundedValue c0_prime_interval(int k, const SumOptions& opts) {
  const double bound = tail_bound(k);  // validates k >= 2
  const LatticeSpec lam = LatticeSpec::rescaled();
  BoundedValue value;
  value.estimate = partial_sum_cube(lam, k, opts);
  value.half_width = bound;
  value.roundoff_slack = partial_sum_roundoff_slack(lam, k);
  return value;
}

BoundedValue refined_c0_prime_interval(int k, int order, const SumOptions& opts) {
  const double bound = tail_bound_outside(k);
  const LatticeSpec lam = LatticeSpec::rescaled();
  BoundedValue value;
  value.estimate = partial_sum_cube(lam, k, opts) - slab_integral(k, order);
  value.half_width = bound;
  value.roundoff_slack = partial_sum_roundoff_slack(lam, k);
  return value;
}

LatticeConstants lattice_constants(int k, const SumOptions& opts) {
  LatticeConstants c;
  c.c0_prime = c0_prime_interval(k, opts);
  c.c0 = c.c0_prime.scaled(-1.0 / 8.0);
  c.cbar = c.c0.scaled(5.0);
  return c;
}

}  // namespace pstokes
