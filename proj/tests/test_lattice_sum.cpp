#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "pstokes/lattice_sum.hpp"
#include "pstokes/reduction.hpp"

using namespace pstokes;

TEST_CASE("summand values and symmetries") {
  CHECK(summand(Vec3(2.0, 0.0, 0.0)) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(summand(Vec3(1.0, 1.0, 5.0)) == 0.0);
  CHECK(summand(Vec3(0.0, 1.0, 0.0)) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_THROWS_AS(summand(Vec3::Zero()), SingularPointError);

  std::mt19937 rng(41);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 y(coord(rng), coord(rng), coord(rng));
    if (y.norm() == 0.0) continue;
    // Exact swap antisymmetry and reflection invariance.
    CHECK(summand(Vec3(y[1], y[0], y[2])) + summand(y) == 0.0);
    CHECK(summand(Vec3(-y[0], y[1], y[2])) == summand(y));
    CHECK(summand(Vec3(y[0], -y[1], y[2])) == summand(y));
    CHECK(summand(Vec3(y[0], y[1], -y[2])) == summand(y));
    for (double lambda : {0.5, 2.0, 3.0}) {
      const double scaled = summand((lambda * y).eval());
      const double expected = summand(y) / (lambda * lambda * lambda);
      CHECK(scaled == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("partial sum at k = 1 against the direct enumeration oracle") {
  // Oracle: the 74 nonzero points with y1 in {-2, 0, 2}, y2, y3 in {-2..2},
  // summed independently (value frozen from a high-precision enumeration).
  double oracle = 0.0;
  int count = 0;
  for (int i : {-2, 0, 2})
    for (int j = -2; j <= 2; ++j)
      for (int l = -2; l <= 2; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        oracle += summand(Vec3(i, j, l));
        ++count;
      }
  CHECK(count == 74);
  CHECK(oracle == doctest::Approx(-2.1930674715518869).epsilon(1e-14));
  CHECK(partial_sum_cube(LatticeSpec::rescaled(), 1) ==
        doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("partial sums over swap-invariant sets vanish") {
  // Cubic lattice: the index cube is swap invariant, so the sum is zero.
  for (int k : {1, 3, 6}) {
    CHECK(std::abs(partial_sum_cube(LatticeSpec::cubic(1.0), k)) < 1e-14);
  }
  // Property test: random swap-closed index sets.
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> coord(-8, 8);
  for (int trial = 0; trial < 20; ++trial) {
    std::set<std::array<int, 3>> index_set;
    for (int draws = 0; draws < 40; ++draws) {
      const int a = coord(rng), b = coord(rng), c = coord(rng);
      if (a == 0 && b == 0 && c == 0) continue;
      index_set.insert({a, b, c});
      index_set.insert({b, a, c});
    }
    double sum = 0.0;
    for (const auto& idx : index_set) sum += summand(Vec3(idx[0], idx[1], idx[2]));
    CHECK(std::abs(sum) < 1e-13 * index_set.size());
  }
}

TEST_CASE("shell summation agrees with the naive lexicographic route") {
  const LatticeSpec lam = LatticeSpec::rescaled();
  for (int k : {2, 5, 10}) {
    const double shells = partial_sum_cube(lam, k);
    const double naive = partial_sum_cube_naive(lam, k);
    CHECK(std::abs(shells - naive) < 1e-12);
  }
}

TEST_CASE("deterministic reduction is bitwise thread-count independent") {
  const LatticeSpec lam = LatticeSpec::rescaled();
  SumOptions opts;
  opts.deterministic = true;
  std::vector<double> results;
  for (int threads : {1, 2, 4, 8}) {
    opts.threads = threads;
    results.push_back(partial_sum_cube(lam, 8, opts));
  }
  for (double r : results) CHECK(r == results[0]);

  opts.deterministic = false;
  for (int threads : {1, 2, 4}) {
    opts.threads = threads;
    CHECK(std::abs(partial_sum_cube(lam, 8, opts) - results[0]) < 1e-12);
  }
}

TEST_CASE("tail bound values and monotonicity") {
  CHECK(tail_bound(35) == doctest::Approx(2.0709814861219948).epsilon(1e-13));
  CHECK(tail_bound(35) < 2.1);
  CHECK(tail_bound(2) == doctest::Approx(352.30282164650129).epsilon(1e-12));
  for (int k = 2; k < 60; ++k) CHECK(tail_bound(k + 1) < tail_bound(k));
  CHECK_THROWS_AS(tail_bound(1), PreconditionError);
}

TEST_CASE("c0' interval: paper endpoints and nesting") {
  const BoundedValue i35 = c0_prime_interval(35);
  CHECK(i35.estimate <= -2.25);
  CHECK(i35.half_width < 2.1);
  CHECK(i35.upper() < -0.15);
  CHECK(i35.excludes_zero());
  CHECK(i35.roundoff_slack < 1e-8);

  std::vector<int> levels{2, 3, 5, 8, 13, 21, 35};
  std::vector<BoundedValue> intervals;
  for (int k : levels) intervals.push_back(c0_prime_interval(k));
  for (std::size_t a = 0; a < intervals.size(); ++a)
    for (std::size_t b = a + 1; b < intervals.size(); ++b)
      CHECK(intervals[a].intersects(intervals[b]));
}

TEST_CASE("lattice constants: scaling relations and signs") {
  const LatticeConstants c = lattice_constants(35);
  CHECK(c.c0.estimate == doctest::Approx(-c.c0_prime.estimate / 8.0).epsilon(1e-15));
  CHECK(c.c0.half_width == doctest::Approx(c.c0_prime.half_width / 8.0).epsilon(1e-15));
  CHECK(c.cbar.estimate == doctest::Approx(5.0 * c.c0.estimate).epsilon(1e-15));
  CHECK(c.cbar.half_width == doctest::Approx(5.0 * c.c0.half_width).epsilon(1e-15));
  CHECK(c.c0.estimate > 0.0);
  CHECK(c.c0.excludes_zero());
  CHECK(c.c0.lower() > 0.15 / 8.0);
  CHECK(c.cbar.lower() > 0.09375);
}

TEST_CASE("refined interval is tighter and consistent") {
  const BoundedValue wide = c0_prime_interval(35);
  const BoundedValue refined = refined_c0_prime_interval(35);
  CHECK(refined.half_width < wide.half_width);
  CHECK(refined.intersects(wide));
  // The slab quadrature is converged: doubling the order moves nothing.
  CHECK(std::abs(slab_integral(35, 48) - slab_integral(35, 64)) < 1e-10);
}

TEST_CASE("sphere and annulus integrals of the summand vanish") {
  CHECK(std::abs(sphere_integral_summand(32)) < 1e-13);
  CHECK(std::abs(annulus_integral_summand(0.125, 0.25)) < 1e-13);
  CHECK(std::abs(annulus_integral_summand(1e-6, 0.25)) < 1e-12);
  CHECK_THROWS_AS(annulus_integral_summand(0.5, 0.25), PreconditionError);
}

TEST_CASE("origin cell principal value: delta independence and convergence") {
  const Cell origin = cell_at(LatticeSpec::rescaled(), Vec3::Zero());
  const double v1 = cell_average_summand(origin, 32, 0.125);
  const double v2 = cell_average_summand(origin, 32, 0.25);
  const double v3 = cell_average_summand(origin, 32, 0.5);
  CHECK(v1 == v2);
  CHECK(v2 == v3);
  CHECK(std::abs(cell_average_summand(origin, 32) - cell_average_summand(origin, 48)) < 1e-10);
  CHECK_THROWS_AS(cell_average_summand(origin, 32, 0.6), PreconditionError);
  CHECK_THROWS_AS(cell_average_summand(origin, 1), PreconditionError);
}

TEST_CASE("far cell averages approach the lattice values") {
  const LatticeSpec lam = LatticeSpec::rescaled();
  for (const Vec3& y : {Vec3(6.0, 2.0, 1.0), Vec3(0.0, 7.0, 3.0), Vec3(8.0, 0.0, 0.0)}) {
    const Cell cell = cell_at(lam, y);
    const double avg = cell_average_summand(cell, 24);
    // Gradient bound: |S(y) - mean| <= (21/2) max_cell (|z| - 3/2)^-4.
    const double r_min = y.norm() - cell.half_extents.norm();
    const double bound = 10.5 / std::pow(r_min - 1.5, 4);
    CHECK(std::abs(summand(y) - avg) <= bound);
  }
}

TEST_CASE("mirror cell pairs cancel") {
  // The integrand is odd under the swap of the first two axes, so a cell and
  // its swapped mirror integrate to opposite values.
  const Vec3 y(2.0, 1.0, 0.0);
  Cell cell;
  cell.center = y;
  cell.half_extents = Vec3(1.0, 0.5, 0.5);
  Cell mirror;
  mirror.center = Vec3(y[1], y[0], y[2]);
  mirror.half_extents = Vec3(0.5, 1.0, 0.5);
  const double volume = 8.0 * cell.half_extents.prod();
  const double total = cell_average_summand(cell, 24) * volume +
                       cell_average_summand(mirror, 24) * volume;
  CHECK(std::abs(total) < 1e-12);
}

TEST_CASE("telescoped cell means equal the slab integral") {
  // Sum of all cell averages over |y|_inf <= 2k (origin PV included)
  // collapses to a single slab integral; validated explicitly at k = 2.
  const int k = 2;
  const LatticeSpec lam = LatticeSpec::rescaled();
  double mean_total = cell_average_summand(cell_at(lam, Vec3::Zero()), 56);
  for (int i = -k; i <= k; ++i)
    for (int j = -2 * k; j <= 2 * k; ++j)
      for (int l = -2 * k; l <= 2 * k; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        mean_total += cell_average_summand(cell_at(lam, Vec3(2.0 * i, j, l)), 32);
      }
  CHECK(mean_total == doctest::Approx(slab_integral(k, 48)).epsilon(1e-9));
}

TEST_CASE("kahan and pairwise reduction building blocks") {
  KahanSum acc;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) acc.add(0.1);
  CHECK(acc.value() == doctest::Approx(100000.0).epsilon(1e-14));

  std::vector<double> blocks{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(pairwise_tree_reduce(blocks) == 15.0);
  CHECK(pairwise_tree_reduce({}) == 0.0);
}
