#include "pstokes/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "pstokes/geometry.hpp"

namespace pstokes {

namespace {

constexpr int kMaxAtoms = 2000;

std::vector<double> cost_matrix(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  if (mu.size() != nu.size())
    throw PreconditionError("transport: measures must have equal atom counts");
  if (mu.size() == 0) throw PreconditionError("transport: empty measures");
  if (mu.size() > kMaxAtoms)
    throw PreconditionError("transport: atom count exceeds the exact-solver cap of 2000");
  const std::size_t n = mu.size();
  std::vector<double> cost(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const ProductMetricPoint p{mu.positions[i], mu.orientations[i]};
    for (std::size_t j = 0; j < n; ++j) {
      const ProductMetricPoint q{nu.positions[j], nu.orientations[j]};
      cost[i * n + j] = ground_metric(p, q);
    }
  }
  return cost;
}

// Shortest-augmenting-path assignment with potentials (O(n^3)); returns the
// column matched to each row.
std::vector<int> solve_assignment(const std::vector<double>& cost, int n) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, n);  // match[col] = row, n = free
  std::vector<int> way(n + 1, 0);
  for (int row = 0; row < n; ++row) {
    match[n] = row;
    int col0 = n;
    std::vector<double> min_slack(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const int row0 = match[col0];
      double delta = inf;
      int col1 = n;
      for (int col = 0; col < n; ++col) {
        if (used[col]) continue;
        const double slack = cost[row0 * n + col] - u[row0] - v[col];
        if (slack < min_slack[col]) {
          min_slack[col] = slack;
          way[col] = col0;
        }
        if (min_slack[col] < delta) {
          delta = min_slack[col];
          col1 = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          min_slack[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != n);
    for (; col0 != n;) {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    }
  }
  std::vector<int> row_to_col(n, -1);
  for (int col = 0; col < n; ++col)
    if (match[col] != n) row_to_col[match[col]] = col;
  return row_to_col;
}

// Hopcroft-Karp maximum matching on the threshold graph {cost <= t}.
int max_matching_under(const std::vector<double>& cost, int n, double threshold,
                       std::vector<int>& match_row) {
  std::vector<int> match_col(n, -1);
  match_row.assign(n, -1);
  std::vector<int> layer(n);
  const int unreachable = std::numeric_limits<int>::max();

  int matched = 0;
  for (;;) {
    // BFS from free rows.
    std::queue<int> frontier;
    for (int r = 0; r < n; ++r) {
      if (match_row[r] == -1) {
        layer[r] = 0;
        frontier.push(r);
      } else {
        layer[r] = unreachable;
      }
    }
    bool found_augmenting = false;
    while (!frontier.empty()) {
      const int r = frontier.front();
      frontier.pop();
      for (int c = 0; c < n; ++c) {
        if (cost[static_cast<std::size_t>(r) * n + c] > threshold) continue;
        const int next = match_col[c];
        if (next == -1) {
          found_augmenting = true;
        } else if (layer[next] == unreachable) {
          layer[next] = layer[r] + 1;
          frontier.push(next);
        }
      }
    }
    if (!found_augmenting) break;
    // Layered DFS augmentation.
    std::vector<char> col_used(n, 0);
    auto dfs = [&](auto&& self, int r) -> bool {
      for (int c = 0; c < n; ++c) {
        if (col_used[c] || cost[static_cast<std::size_t>(r) * n + c] > threshold) continue;
        const int next = match_col[c];
        if (next == -1 || (layer[next] == layer[r] + 1 && self(self, next))) {
          col_used[c] = 1;
          match_row[r] = c;
          match_col[c] = r;
          return true;
        }
      }
      layer[r] = unreachable;
      return false;
    };
    for (int r = 0; r < n; ++r)
      if (match_row[r] == -1 && layer[r] == 0 && dfs(dfs, r)) ++matched;
  }
  return matched;
}

}  // namespace

double ground_metric(const ProductMetricPoint& p, const ProductMetricPoint& q) {
  return torus_distance(p.x, q.x, TorusGeometry::unit()) + (p.xi - q.xi).norm();
}

TransportResult w1_exact(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  const std::vector<double> cost = cost_matrix(mu, nu);
  const int n = static_cast<int>(mu.size());
  TransportResult result;
  result.matching = solve_assignment(cost, n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += cost[static_cast<std::size_t>(i) * n + result.matching[i]];
  result.distance = total / n;
  result.method = "assignment-sap";
  return result;
}

TransportResult winf_exact(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  const std::vector<double> cost = cost_matrix(mu, nu);
  const int n = static_cast<int>(mu.size());

  std::vector<double> values = cost;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<int> match_row;
  std::size_t lo = 0, hi = values.size() - 1;
  // The largest value is always feasible (any permutation works there only if
  // every row can reach every column, which holds for a complete matrix).
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (max_matching_under(cost, n, values[mid], match_row) == n) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  TransportResult result;
  result.distance = values[lo];
  max_matching_under(cost, n, values[lo], match_row);
  result.matching = match_row;
  result.method = "bottleneck-hk";
  return result;
}

namespace {
double xi1_mean(const EmpiricalMeasure& mu) {
  double sum = 0.0;
  for (const Vec3& xi : mu.orientations) sum += xi[0];
  return sum / static_cast<double>(mu.size());
}
}  // namespace

double w1_dual_xi1_bound(const EmpiricalMeasure& mu, const EmpiricalMeasure& target) {
  return std::abs(xi1_mean(mu) - xi1_mean(target));
}

double w1_dual_xi1_bound(const EmpiricalMeasure& mu, const OrientationDensity& target) {
  const double target_moment = target.moment([](const Vec3& xi) { return xi[0]; });
  return std::abs(xi1_mean(mu) - target_moment);
}

double g_function(double t, const OrientationDensity& h, double cbar) {
  const Mat3 forward = rotation_about_e3(0.5 * cbar * t);
  return h.moment([&](const Vec3& xi) { return xi[0] - (forward * xi)[0]; });
}

double g_prime_zero(const OrientationDensity& h, double cbar) {
  return 0.5 * cbar * h.moment([](const Vec3& xi) { return xi[1]; });
}

SampledDensityDistance distance_to_density_sampled(const EmpiricalMeasure& mu,
                                                   const OrientationDensity& h,
                                                   std::uint64_t seed, int replicates) {
  if (replicates < 1) throw PreconditionError("distance_to_density_sampled: replicates >= 1");
  const int n = static_cast<int>(mu.size());
  SampledDensityDistance out;
  double w1_min = std::numeric_limits<double>::infinity(), w1_max = 0.0;
  double w1_sum = 0.0, winf_sum = 0.0;
  for (int r = 0; r < replicates; ++r) {
    const std::uint64_t rep_seed = seed + 0x9E3779B9ull * static_cast<std::uint64_t>(r + 1);
    EmpiricalMeasure sample;
    sample.positions = sample_uniform_positions(n, rep_seed);
    sample.orientations = sample_orientations(h, n, rep_seed ^ 0x5DEECE66Dull);
    const double w1 = w1_exact(mu, sample).distance;
    const double winf = winf_exact(mu, sample).distance;
    w1_sum += w1;
    winf_sum += winf;
    w1_min = std::min(w1_min, w1);
    w1_max = std::max(w1_max, w1);
  }
  out.w1 = w1_sum / replicates;
  out.winf = winf_sum / replicates;
  out.mc_uncertainty = 0.5 * (w1_max - w1_min);
  return out;
}

}  // namespace pstokes
