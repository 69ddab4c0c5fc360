#include "pstokes/suspension.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "pstokes/kernels.hpp"
#include "pstokes/lattice_sum.hpp"
#include "pstokes/mobility.hpp"

namespace pstokes {

namespace {

constexpr double kPi = std::numbers::pi;

// splitmix64; the stream for (seed, index, attempt) is derived by remixing,
// so samples are independent of evaluation order.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double to_unit_double(std::uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

struct CounterRng {
  std::uint64_t state;
  CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt)
      : state(mix64(mix64(seed ^ mix64(index + 1)) ^ mix64(attempt + 0x632BE59BD9B4E019ull))) {}
  double next() {
    state = mix64(state);
    return to_unit_double(state);
  }
};

Vec3 uniform_sphere_point(CounterRng& rng) {
  const double z = 2.0 * rng.next() - 1.0;
  const double phi = 2.0 * kPi * rng.next();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

}  // namespace

ParticleConfiguration build_configuration(ConfigKind kind, int k, double radius) {
  if (k < 1) throw PreconditionError("build_configuration: k must be >= 1");
  if (!(radius > 0.0)) throw PreconditionError("build_configuration: radius must be > 0");
  ParticleConfiguration config;
  config.kind = kind;
  config.k = k;
  config.radius = radius;
  double spacing = 0.0;
  switch (kind) {
    case ConfigKind::cubic: {
      spacing = 1.0 / k;
      config.positions.reserve(static_cast<std::size_t>(k) * k * k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          for (int l = 0; l < k; ++l)
            config.positions.emplace_back(i * spacing, j * spacing, l * spacing);
      break;
    }
    case ConfigKind::noncubic: {
      spacing = 1.0 / (2 * k);
      config.positions.reserve(static_cast<std::size_t>(4) * k * k * k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < 2 * k; ++j)
          for (int l = 0; l < 2 * k; ++l)
            config.positions.emplace_back(i / static_cast<double>(k), j * spacing, l * spacing);
      break;
    }
    case ConfigKind::custom:
      throw PreconditionError("build_configuration: custom configurations are built directly");
  }
  if (!(2.0 * radius < spacing))
    throw PreconditionError("build_configuration: 2R must stay below the minimal distance " +
                            std::to_string(spacing));
  return config;
}

double min_distance(const ParticleConfiguration& config) {
  const std::size_t n = config.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  const TorusGeometry torus = TorusGeometry::unit();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      best = std::min(best, torus_distance(config.positions[i], config.positions[j], torus));
  return best;
}

double OrientationDensity::integral() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i)
    sum += grid.weights[i] * evaluate(grid.points[i]);
  return sum;
}

double OrientationDensity::moment(const std::function<double(const Vec3&)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i)
    sum += grid.weights[i] * f(grid.points[i]) * evaluate(grid.points[i]);
  return sum;
}

OrientationDensity make_orientation_density(std::function<double(const Vec3&)> unnormalized,
                                            double sup_unnormalized, int grid_order) {
  OrientationDensity h;
  h.unnormalized = std::move(unnormalized);
  h.grid = sphere_gauss_grid(grid_order);
  h.sup_unnormalized = sup_unnormalized;
  double mass = 0.0;
  for (std::size_t i = 0; i < h.grid.points.size(); ++i)
    mass += h.grid.weights[i] * h.unnormalized(h.grid.points[i]);
  if (!(mass > 0.0)) throw PreconditionError("make_orientation_density: density mass is zero");
  h.normalization = 1.0 / mass;
  return h;
}

OrientationDensity default_orientation_bump(int grid_order) {
  auto bump = [](const Vec3& xi) {
    const double t = xi[1] - 0.1;
    return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
  };
  // The profile is increasing in xi2, so the sup sits at xi2 = 1.
  return make_orientation_density(bump, std::exp(-1.0 / 0.9), grid_order);
}

OrientationDensity hemisphere_density(int grid_order) {
  auto uniform = [](const Vec3& xi) { return xi[1] > 0.0 ? 1.0 : 0.0; };
  return make_orientation_density(uniform, 1.0, grid_order);
}

OrientationDensity rotate_density(const OrientationDensity& h, double t, double cbar) {
  const Mat3 back_rotation = rotation_about_e3(-0.5 * cbar * t);
  OrientationDensity rotated;
  rotated.unnormalized = [base = h.unnormalized, back_rotation](const Vec3& xi) {
    return base(back_rotation * xi);
  };
  rotated.grid = h.grid;
  rotated.normalization = h.normalization;
  rotated.sup_unnormalized = h.sup_unnormalized;
  return rotated;
}

std::vector<Vec3> sample_orientations(const OrientationDensity& h, int n, std::uint64_t seed) {
  constexpr std::uint64_t kMaxAttempts = 100000;
  std::vector<Vec3> samples;
  samples.reserve(n);
  for (int i = 0; i < n; ++i) {
    bool accepted = false;
    for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      CounterRng rng(seed, static_cast<std::uint64_t>(i), attempt);
      const Vec3 xi = uniform_sphere_point(rng);
      const double u = rng.next();
      if (u * h.sup_unnormalized <= h.unnormalized(xi)) {
        samples.push_back(xi);
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw std::runtime_error("sample_orientations: rejection sampling failed; check sup bound");
  }
  return samples;
}

std::vector<Vec3> sample_uniform_positions(int n, std::uint64_t seed) {
  std::vector<Vec3> points;
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i), 0x706F73ull);
    points.emplace_back(rng.next(), rng.next(), rng.next());
  }
  return points;
}

EmpiricalMeasure make_empirical(const ParticleConfiguration& config,
                                std::vector<Vec3> orientations) {
  if (orientations.size() != config.size())
    throw PreconditionError("make_empirical: orientation count must match particle count");
  EmpiricalMeasure mu;
  mu.positions = config.positions;
  mu.orientations = std::move(orientations);
  return mu;
}

namespace {

// Renormalized image superposition for one target particle. The combined
// displacement set is truncated by a cube symmetric about the target
// (|d|_inf <= images + 1/4), so symmetric configurations cancel pairwise;
// the subtracted cell means telescope per source into one surface integral
// of n x v over the box of included unit cells.
Vec3 direct_omega_at(const ParticleConfiguration& config, std::size_t target, const Mat3& a,
                     const OmegaOptions& opts) {
  const double window = opts.images + 0.25;
  Vec3 kernel_sum = Vec3::Zero();
  Vec3 correction = Vec3::Zero();
  for (std::size_t j = 0; j < config.size(); ++j) {
    const Vec3 c = config.positions[target] - config.positions[j];
    std::int64_t m_min[3], m_max[3];
    for (int axis = 0; axis < 3; ++axis) {
      m_min[axis] = static_cast<std::int64_t>(std::ceil(c[axis] - window));
      m_max[axis] = static_cast<std::int64_t>(std::floor(c[axis] + window));
    }
    for (std::int64_t i1 = m_min[0]; i1 <= m_max[0]; ++i1)
      for (std::int64_t i2 = m_min[1]; i2 <= m_max[1]; ++i2)
        for (std::int64_t i3 = m_min[2]; i3 <= m_max[2]; ++i3) {
          if (j == target && i1 == 0 && i2 == 0 && i3 == 0) continue;
          const Vec3 d = c - Vec3(static_cast<double>(i1), static_cast<double>(i2),
                                  static_cast<double>(i3));
          kernel_sum += curl_image_kernel(d, a);
        }
    // Box of the included cells (unit cells centered on the displacement
    // points); int_V curl F = surface integral of n x F with F the image
    // velocity -(20pi/3) stresslet. Cell volume is 1 on the unit torus.
    Vec3 box_center, box_half;
    for (int axis = 0; axis < 3; ++axis) {
      const double low = c[axis] - (static_cast<double>(m_max[axis]) + 0.5);
      const double high = c[axis] - (static_cast<double>(m_min[axis]) - 0.5);
      box_center[axis] = 0.5 * (low + high);
      box_half[axis] = 0.5 * (high - low);
    }
    for (int axis = 0; axis < 3; ++axis) {
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      Vec3 au = Vec3::Zero(), av = Vec3::Zero(), an = Vec3::Zero();
      au[u] = 1.0;
      av[v] = 1.0;
      an[axis] = 1.0;
      for (int side = -1; side <= 1; side += 2) {
        const Vec3 center = box_center + side * box_half[axis] * an;
        const Vec3 face = rectangle_integrate(
            center, au, box_half[u], av, box_half[v], opts.face_order,
            [&](const Vec3& w) -> Vec3 {
              return (side * an).cross((-20.0 * kPi / 3.0) * stresslet_velocity(w, a));
            });
        correction += face;
      }
    }
  }
  const double phi = config.volume_fraction();
  const double r3 = config.radius * config.radius * config.radius;
  return 0.5 * (r3 / phi) * (kernel_sum - correction);
}

}  // namespace

std::vector<Vec3> per_particle_omega(const ParticleConfiguration& config, const Mat3& a,
                                     OmegaMode mode, const OmegaOptions& opts) {
  const double lambda = strain_multiple_of_canonical(a);
  std::vector<Vec3> omegas(config.size(), Vec3::Zero());
  switch (mode) {
    case OmegaMode::lattice: {
      if (config.kind == ConfigKind::cubic) return omegas;
      if (config.kind != ConfigKind::noncubic)
        throw UnsupportedError("per_particle_omega: lattice mode needs a periodic configuration");
      const double cbar = lattice_constants(opts.k_sum).cbar.estimate;
      const Vec3 omega = 0.5 * cbar * lambda * Vec3::UnitZ();
      for (auto& w : omegas) w = omega;
      return omegas;
    }
    case OmegaMode::direct: {
      for (std::size_t i = 0; i < config.size(); ++i)
        omegas[i] = direct_omega_at(config, i, a, opts);
      return omegas;
    }
  }
  throw UnsupportedError("per_particle_omega: unknown mode");
}

Vec3 rodrigues_rotate(const Vec3& xi, const Vec3& omega, double dt) {
  const double speed = omega.norm();
  if (speed == 0.0) return xi;
  const Vec3 axis = omega / speed;
  const double angle = speed * dt;
  const double c = std::cos(angle), s = std::sin(angle);
  return c * xi + s * axis.cross(xi) + (1.0 - c) * axis.dot(xi) * axis;
}

void step_orientations(std::vector<Vec3>& orientations, const std::vector<Vec3>& omegas,
                       double dt) {
  if (!(dt > 0.0)) throw PreconditionError("step_orientations: dt must be > 0");
  for (std::size_t i = 0; i < orientations.size(); ++i)
    orientations[i] = rodrigues_rotate(orientations[i], omegas[i], dt);
}

Trajectory simulate(const ParticleConfiguration& config, const OrientationDensity& h,
                    std::uint64_t seed, double T, double dt, const SimulateOptions& opts) {
  if (!(T >= 0.0)) throw PreconditionError("simulate: T must be >= 0");
  if (!(dt > 0.0)) throw PreconditionError("simulate: dt must be > 0");
  const Mat3 a = canonical_strain();
  Trajectory trajectory;
  trajectory.omega_log = per_particle_omega(config, a, opts.mode, opts.omega);
  trajectory.cbar_estimate = lattice_constants(opts.omega.k_sum).cbar.estimate;

  std::vector<Vec3> orientations =
      sample_orientations(h, static_cast<int>(config.size()), seed);
  const std::int64_t n_steps = std::llround(T / dt);
  trajectory.times.reserve(n_steps + 1);
  trajectory.measures.reserve(n_steps + 1);
  trajectory.times.push_back(0.0);
  trajectory.measures.push_back(make_empirical(config, orientations));
  for (std::int64_t step = 1; step <= n_steps; ++step) {
    step_orientations(orientations, trajectory.omega_log, dt);
    trajectory.times.push_back(step * dt);
    trajectory.measures.push_back(make_empirical(config, orientations));
  }
  return trajectory;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
  out << "t,i,x1,x2,x3,xi1,xi2,xi3\n";
  char line[256];
  for (std::size_t f = 0; f < trajectory.times.size(); ++f) {
    const EmpiricalMeasure& mu = trajectory.measures[f];
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const Vec3& x = mu.positions[i];
      const Vec3& xi = mu.orientations[i];
      std::snprintf(line, sizeof(line), "%.17g,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    trajectory.times[f], i, x[0], x[1], x[2], xi[0], xi[1], xi[2]);
      out << line;
    }
  }
}

}  // namespace pstokes
