#ifndef PSTOKES_TRANSPORT_HPP
#define PSTOKES_TRANSPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pstokes/common.hpp"
#include "pstokes/suspension.hpp"

namespace pstokes {

struct ProductMetricPoint {
  Vec3 x;   // point on the unit torus
  Vec3 xi;  // unit orientation
};

// Sum metric on T x S^2: geodesic torus distance plus chordal sphere
// distance. The coordinate xi1 is 1-Lipschitz for this choice, which keeps
// the dual lower bound valid.
double ground_metric(const ProductMetricPoint& p, const ProductMetricPoint& q);

struct TransportResult {
  double distance = 0.0;
  std::vector<int> matching;  // matching[i] = index paired with atom i of mu
  std::string method;
};

// Exact 1-Wasserstein distance between equal-size uniform empirical
// measures: optimal assignment cost / N via shortest augmenting paths.
// Capped at N = 2000 per instance.
TransportResult w1_exact(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

// Exact infinity-Wasserstein (bottleneck) distance: smallest threshold t
// whose graph {cost <= t} has a perfect matching.
TransportResult winf_exact(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

// Dual lower bound from the 1-Lipschitz test function xi1:
//   |int xi1 dmu - int xi1 dtarget|.
double w1_dual_xi1_bound(const EmpiricalMeasure& mu, const EmpiricalMeasure& target);
double w1_dual_xi1_bound(const EmpiricalMeasure& mu, const OrientationDensity& target);

// g(t) = int (xi1 - (exp((cbar/2) M t) xi)_1) h(xi) dxi and its derivative
// at 0, (cbar/2) int xi2 h dxi, both by sphere quadrature.
double g_function(double t, const OrientationDensity& h, double cbar);
double g_prime_zero(const OrientationDensity& h, double cbar);

// Distance to a smooth density, handled by sampling the density (uniform
// positions x h-orientations) and solving empirical-empirical transport.
// The Monte-Carlo uncertainty is the half range over the replicates.
struct SampledDensityDistance {
  double w1 = 0.0;
  double winf = 0.0;
  double mc_uncertainty = 0.0;
};

SampledDensityDistance distance_to_density_sampled(const EmpiricalMeasure& mu,
                                                   const OrientationDensity& h,
                                                   std::uint64_t seed, int replicates = 3);

}  // namespace pstokes

#endif  // PSTOKES_TRANSPORT_HPP
