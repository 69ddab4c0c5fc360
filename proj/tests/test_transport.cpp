#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "pstokes/lattice_sum.hpp"
#include "pstokes/transport.hpp"

using namespace pstokes;

namespace {

EmpiricalMeasure random_measure(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  EmpiricalMeasure mu;
  for (int i = 0; i < n; ++i) {
    mu.positions.emplace_back(unit(rng), unit(rng), unit(rng));
    Vec3 xi(gauss(rng), gauss(rng), gauss(rng));
    while (xi.norm() < 1e-3) xi = Vec3(gauss(rng), gauss(rng), gauss(rng));
    mu.orientations.push_back(xi.normalized());
  }
  return mu;
}

double brute_force_w1(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  const int n = static_cast<int>(mu.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      total += ground_metric({mu.positions[i], mu.orientations[i]},
                             {nu.positions[perm[i]], nu.orientations[perm[i]]});
    best = std::min(best, total / n);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double brute_force_winf(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  const int n = static_cast<int>(mu.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, ground_metric({mu.positions[i], mu.orientations[i]},
                                            {nu.positions[perm[i]], nu.orientations[perm[i]]}));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("ground metric: values and axioms") {
  const ProductMetricPoint p{Vec3(0.2, 0.2, 0.2), Vec3::UnitX()};
  CHECK(ground_metric(p, p) == 0.0);
  const ProductMetricPoint q{Vec3(0.2, 0.2, 0.2), Vec3::UnitY()};
  CHECK(ground_metric(p, q) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const ProductMetricPoint wrapped{Vec3(0.2 + 0.9 - 1.0, 0.2, 0.2), Vec3::UnitX()};
  CHECK(ground_metric(p, wrapped) == doctest::Approx(0.1).epsilon(1e-12));

  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const EmpiricalMeasure m = random_measure(rng, 3);
    const ProductMetricPoint a{m.positions[0], m.orientations[0]};
    const ProductMetricPoint b{m.positions[1], m.orientations[1]};
    const ProductMetricPoint c{m.positions[2], m.orientations[2]};
    CHECK(ground_metric(a, b) == doctest::Approx(ground_metric(b, a)).epsilon(1e-12));
    CHECK(ground_metric(a, c) <= ground_metric(a, b) + ground_metric(b, c) + 1e-12);
  }
}

TEST_CASE("w1 against permutation brute force") {
  std::mt19937 rng(23);
  SUBCASE("identical measures") {
    const EmpiricalMeasure mu = random_measure(rng, 6);
    CHECK(w1_exact(mu, mu).distance == 0.0);
  }
  SUBCASE("single atom pair") {
    EmpiricalMeasure mu, nu;
    mu.positions = {Vec3(0.1, 0.1, 0.1)};
    mu.orientations = {Vec3::UnitX()};
    nu.positions = {Vec3(0.1, 0.1, 0.1)};
    nu.orientations = {Vec3::UnitY()};
    CHECK(w1_exact(mu, nu).distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }
  SUBCASE("random instances") {
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 2 + trial % 5;
      const EmpiricalMeasure mu = random_measure(rng, n);
      const EmpiricalMeasure nu = random_measure(rng, n);
      const TransportResult result = w1_exact(mu, nu);
      CHECK(result.distance == doctest::Approx(brute_force_w1(mu, nu)).epsilon(1e-12));
      // The reported matching realises the reported cost.
      double realized = 0.0;
      for (int i = 0; i < n; ++i)
        realized += ground_metric({mu.positions[i], mu.orientations[i]},
                                  {nu.positions[result.matching[i]],
                                   nu.orientations[result.matching[i]]});
      CHECK(realized / n == doctest::Approx(result.distance).epsilon(1e-12));
    }
  }
}

TEST_CASE("winf against permutation brute force and the p-ordering") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 4;
    const EmpiricalMeasure mu = random_measure(rng, n);
    const EmpiricalMeasure nu = random_measure(rng, n);
    const TransportResult winf = winf_exact(mu, nu);
    CHECK(winf.distance == doctest::Approx(brute_force_winf(mu, nu)).epsilon(1e-12));
    CHECK(w1_exact(mu, nu).distance <= winf.distance + 1e-12);
  }
  const EmpiricalMeasure mu = random_measure(rng, 5);
  CHECK(winf_exact(mu, mu).distance == 0.0);
}

TEST_CASE("transport error paths") {
  std::mt19937 rng(31);
  const EmpiricalMeasure mu = random_measure(rng, 3);
  const EmpiricalMeasure nu = random_measure(rng, 4);
  CHECK_THROWS_AS(w1_exact(mu, nu), PreconditionError);
  const EmpiricalMeasure empty;
  CHECK_THROWS_AS(w1_exact(empty, empty), PreconditionError);
}

TEST_CASE("w1 scales linearly under exact chordal dilation") {
  // Atoms on a latitude circle around e3: pairwise chords scale exactly with
  // sin(r), so shrinking the circle dilates every distance by the same factor.
  const auto circle_measure = [](double sin_r, int n, double phase) {
    EmpiricalMeasure mu;
    const double cos_r = std::sqrt(1.0 - sin_r * sin_r);
    for (int i = 0; i < n; ++i) {
      const double phi = phase + 2.0 * std::numbers::pi * i / n;
      mu.positions.emplace_back(0.5, 0.5, 0.5);
      mu.orientations.emplace_back(sin_r * std::cos(phi), sin_r * std::sin(phi), cos_r);
    }
    return mu;
  };
  const double base = w1_exact(circle_measure(0.4, 7, 0.0), circle_measure(0.4, 7, 0.3)).distance;
  for (double lambda : {0.5, 0.25}) {
    const double scaled =
        w1_exact(circle_measure(lambda * 0.4, 7, 0.0), circle_measure(lambda * 0.4, 7, 0.3))
            .distance;
    CHECK(scaled == doctest::Approx(lambda * base).epsilon(1e-12));
  }
}

TEST_CASE("dual bound from xi1") {
  std::mt19937 rng(37);
  const EmpiricalMeasure mu = random_measure(rng, 8);
  CHECK(w1_dual_xi1_bound(mu, mu) == 0.0);

  // Rotating orientations by a quarter turn about e3 relabels xi1 -> -xi2.
  EmpiricalMeasure rotated = mu;
  const Mat3 q = rotation_about_e3(0.5 * std::numbers::pi);
  for (Vec3& xi : rotated.orientations) xi = q * xi;
  double mean1 = 0.0, mean2 = 0.0;
  for (const Vec3& xi : mu.orientations) {
    mean1 += xi[0];
    mean2 += xi[1];
  }
  mean1 /= mu.size();
  mean2 /= mu.size();
  CHECK(w1_dual_xi1_bound(mu, rotated) == doctest::Approx(std::abs(mean1 + mean2)).epsilon(1e-12));

  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    const EmpiricalMeasure a = random_measure(rng, n);
    const EmpiricalMeasure b = random_measure(rng, n);
    CHECK(w1_dual_xi1_bound(a, b) <= w1_exact(a, b).distance + 1e-12);
  }
}

TEST_CASE("g function and its derivative at zero") {
  const OrientationDensity h = default_orientation_bump();
  CHECK(g_function(0.0, h, 1.5) == 0.0);
  CHECK(g_function(0.7, h, 0.0) == 0.0);

  const double cbar = 1.5;
  const double fd =
      (g_function(1e-4, h, cbar) - g_function(-1e-4, h, cbar)) / 2e-4;
  CHECK(std::abs(fd - g_prime_zero(h, cbar)) < 1e-6);

  // Uniform hemisphere density: int xi2 h = 1/2, so g'(0) = cbar/4.
  const OrientationDensity hemi = hemisphere_density();
  CHECK(g_prime_zero(hemi, cbar) == doctest::Approx(cbar / 4.0).epsilon(2e-3));

  // The dual bound between the two limiting densities is exactly g(t):
  // the rotated density's xi1 moment equals the moment of (exp rotation xi)_1.
  for (double t : {0.3, 0.9}) {
    const OrientationDensity rotated = rotate_density(h, t, cbar);
    const double moment_diff = h.moment([](const Vec3& xi) { return xi[0]; }) -
                               rotated.moment([](const Vec3& xi) { return xi[0]; });
    CHECK(moment_diff == doctest::Approx(g_function(t, h, cbar)).epsilon(1e-9));
  }

  // Linear lower bound g(t) >= g'(0) t / 2 on [0, 1] for the default bump.
  const double rate = lattice_constants(10).cbar.estimate;
  const double gp0 = g_prime_zero(h, rate);
  CHECK(gp0 > 0.0);
  for (double t = 0.1; t <= 1.0; t += 0.1) {
    CHECK(g_function(t, h, rate) >= 0.5 * gp0 * t);
  }
}

TEST_CASE("sampled distance to a density") {
  const OrientationDensity h = default_orientation_bump();
  EmpiricalMeasure mu;
  mu.positions = sample_uniform_positions(40, 11);
  mu.orientations = sample_orientations(h, 40, 12);
  const SampledDensityDistance d = distance_to_density_sampled(mu, h, 21, 3);
  CHECK(d.w1 > 0.0);
  CHECK(d.winf >= d.w1);
  CHECK(d.mc_uncertainty >= 0.0);
  CHECK(d.mc_uncertainty < d.w1);
}
