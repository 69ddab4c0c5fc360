#ifndef PSTOKES_SUSPENSION_HPP
#define PSTOKES_SUSPENSION_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "pstokes/common.hpp"
#include "pstokes/geometry.hpp"
#include "pstokes/quadrature.hpp"

namespace pstokes {

enum class ConfigKind { cubic, noncubic, custom };

// Particle centers on the unit torus plus a common radius. For the periodic
// kinds the positions are the grids (Z/k)^3 (N = k^3) and
// (Z/k) x (Z/2k)^2 (N = 4k^3).
struct ParticleConfiguration {
  std::vector<Vec3> positions;
  double radius = 0.0;
  ConfigKind kind = ConfigKind::custom;
  int k = 0;

  std::size_t size() const { return positions.size(); }
  double volume_fraction() const { return size() * radius * radius * radius; }
};

ParticleConfiguration build_configuration(ConfigKind kind, int k, double radius);

// Exact minimal-image pairwise minimum distance; +infinity for fewer than
// two particles (documented sentinel).
double min_distance(const ParticleConfiguration& config);

// Probability density on the unit sphere with quadrature support. evaluate()
// returns the normalized density; normalization is fixed at construction.
struct OrientationDensity {
  std::function<double(const Vec3&)> unnormalized;
  SphereGrid grid;
  double normalization = 1.0;     // evaluate = normalization * unnormalized
  double sup_unnormalized = 1.0;  // upper bound used by rejection sampling

  double evaluate(const Vec3& xi) const { return normalization * unnormalized(xi); }
  double integral() const;                                      // ~1 by construction
  double moment(const std::function<double(const Vec3&)>& f) const;  // int f h
};

OrientationDensity make_orientation_density(std::function<double(const Vec3&)> unnormalized,
                                            double sup_unnormalized, int grid_order = 96);

// Default smooth bump supported in {xi2 > 1/10}: exp(-1/(xi2 - 1/10)).
OrientationDensity default_orientation_bump(int grid_order = 96);

// Uniform density on the open hemisphere {xi2 > 0} (discontinuous; used as a
// test density with known moments).
OrientationDensity hemisphere_density(int grid_order = 96);

// xi -> h(exp(-(cbar/2) M t) xi); rotations preserve the normalization and
// the sup bound exactly, so both are reused.
OrientationDensity rotate_density(const OrientationDensity& h, double t, double cbar);

// N unit vectors i.i.d. with law h, by rejection from the uniform sphere.
// Counter-based generator: sample i depends only on (seed, i, attempt), so
// results are reproducible and order-independent.
std::vector<Vec3> sample_orientations(const OrientationDensity& h, int n, std::uint64_t seed);

// Uniform points on the unit torus from the same counter-based generator.
std::vector<Vec3> sample_uniform_positions(int n, std::uint64_t seed);

struct EmpiricalMeasure {
  std::vector<Vec3> positions;
  std::vector<Vec3> orientations;

  std::size_t size() const { return positions.size(); }
};

EmpiricalMeasure make_empirical(const ParticleConfiguration& config,
                                std::vector<Vec3> orientations);

enum class OmegaMode { lattice, direct };

struct OmegaOptions {
  int k_sum = 35;      // truncation for the lattice-constant interval
  int images = 8;      // image cube radius in direct mode
  int face_order = 12; // surface quadrature for the direct-mode cell means
};

// Per-particle angular velocities for the canonical strain family.
// "lattice" mode returns the closed-form leading-order values: zero for
// cubic configurations, (cbar/2) e3 for the doubled-grid ones. "direct"
// mode evaluates the renormalized truncated image superposition of
// stresslet curls (unnormalized microscopic value; see README).
std::vector<Vec3> per_particle_omega(const ParticleConfiguration& config, const Mat3& a,
                                     OmegaMode mode, const OmegaOptions& opts = {});

// Exact rotation of xi by angle |omega| dt about omega/|omega| (Rodrigues).
Vec3 rodrigues_rotate(const Vec3& xi, const Vec3& omega, double dt);

void step_orientations(std::vector<Vec3>& orientations, const std::vector<Vec3>& omegas,
                       double dt);

struct Trajectory {
  std::vector<double> times;
  std::vector<EmpiricalMeasure> measures;
  std::vector<Vec3> omega_log;  // per-particle angular velocities used
  double cbar_estimate = 0.0;
};

struct SimulateOptions {
  OmegaMode mode = OmegaMode::lattice;
  OmegaOptions omega;
};

// Evolves d xi_i/dt = omega_i ^ xi_i with frozen centers; omega is constant
// in time, so the per-step Rodrigues update integrates the dynamics exactly
// and dt only sets the output cadence.
Trajectory simulate(const ParticleConfiguration& config, const OrientationDensity& h,
                    std::uint64_t seed, double T, double dt,
                    const SimulateOptions& opts = {});

// One record per (time, particle): t,i,x1,x2,x3,xi1,xi2,xi3 at full
// round-trip precision.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);

}  // namespace pstokes

#endif  // PSTOKES_SUSPENSION_HPP
