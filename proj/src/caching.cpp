#include "d2d/caching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "d2d/errors.hpp"

namespace d2d {

std::string to_string(CachingPolicy p) {
  return p == CachingPolicy::optimal ? "optimal" : "uniform";
}

CachingPolicy caching_policy_from_string(const std::string& s) {
  if (s == "optimal") return CachingPolicy::optimal;
  if (s == "uniform") return CachingPolicy::uniform;
  throw ConfigError("unknown caching policy: '" + s + "' (expected optimal or uniform)");
}

double offloading_ratio(const DemandModel& demand, const NetworkConfig& net,
                        std::span<const double> caching) {
  demand.validate();
  net.validate();
  if (caching.size() != static_cast<std::size_t>(demand.catalog_size)) {
    throw ConfigError("offloading_ratio: caching vector length " +
                      std::to_string(caching.size()) + " does not match catalog size " +
                      std::to_string(demand.catalog_size));
  }
  const double c = net.user_density * kPi * net.collaboration_distance_m *
                   net.collaboration_distance_m;
  const std::vector<double> pr = request_probabilities(demand);
  double ratio = 0.0;
  for (std::size_t i = 0; i < caching.size(); ++i) {
    ratio += pr[i] * (1.0 - std::exp(-c * caching[i]));
  }
  return ratio;
}

std::vector<double> uniform_caching(int catalog_size) {
  return std::vector<double>(static_cast<std::size_t>(catalog_size),
                             1.0 / static_cast<double>(catalog_size));
}

std::vector<double> caching_for_policy(CachingPolicy policy, const DemandModel& demand,
                                       const NetworkConfig& net) {
  if (policy == CachingPolicy::uniform) return uniform_caching(demand.catalog_size);
  return solve_optimal_caching(demand, net).probs;
}

CachingDistribution solve_optimal_caching(const DemandModel& demand,
                                          const NetworkConfig& net) {
  demand.validate();
  net.validate();
  const int n = demand.catalog_size;
  const double beta = demand.zipf_exponent;
  const double c = net.user_density * kPi * net.collaboration_distance_m *
                   net.collaboration_distance_m;

  CachingDistribution result;
  if (n == 1) {
    result.probs = {1.0};
    result.support_index = 1;
    result.multiplier = -1.0;  // x_1 - 1 with p_r(1) = 1, so x_1 = 0
    return result;
  }
  if (beta == 0.0) {
    // Symmetric objective: every x_i is equal and the optimum is uniform.
    result.probs = uniform_caching(n);
    result.support_index = n;
    result.multiplier = -1.0 / static_cast<double>(n) - std::log(static_cast<double>(n)) / c;
    return result;
  }

  // Prefix sums of ln k, i.e. log_fact[k] = ln(k!). Exact enough at catalog
  // scale and cheaper than repeated lgamma calls.
  std::vector<double> log_fact(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    log_fact[static_cast<std::size_t>(k)] =
        log_fact[static_cast<std::size_t>(k - 1)] + std::log(static_cast<double>(k));
  }

  const double target = c / beta;
  // Boundary conditions in the log domain:
  //   lower(m) = ln(m^m / m!) < target     (p_c(m) still positive)
  //   upper(m) = ln((m+1)^m / m!) >= target (p_c(m+1) would go negative)
  auto lower = [&](int m) {
    return m * std::log(static_cast<double>(m)) - log_fact[static_cast<std::size_t>(m)];
  };
  auto upper = [&](int m) {
    return m * std::log(static_cast<double>(m + 1)) - log_fact[static_cast<std::size_t>(m)];
  };

  int support = -1;
  if (lower(n) < target) {
    support = n;  // full support
  } else {
    // Analytic bracket for i*, widened by one on each side before scanning.
    // Scanning upward returns the smallest qualifying index, which also
    // settles near-equality ties deterministically.
    const double bracket_pad = std::log(std::sqrt(2.0 * kPi * n)) + 1.0;
    int lo = static_cast<int>(std::floor(target - 1.0)) - 1;
    int hi = static_cast<int>(std::ceil(target + bracket_pad)) + 1;
    lo = std::max(lo, 1);
    hi = std::min(hi, n);
    for (int m = lo; m <= hi; ++m) {
      if (upper(m) >= target && lower(m) < target) {
        support = m;
        break;
      }
    }
    if (support < 0) {
      // Should be unreachable: the conditions define a unique index and the
      // bracket is already padded. Scan everything and report the hole.
      std::fprintf(stderr,
                   "solve_optimal_caching: support index missing from bracket "
                   "[%d, %d] (c/beta = %.17g); falling back to exhaustive search\n",
                   lo, hi, target);
      for (int m = 1; m <= n; ++m) {
        if (upper(m) >= target && lower(m) < target) {
          support = m;
          break;
        }
      }
      if (support < 0) {
        throw SolverError("solve_optimal_caching: no support index satisfies the "
                          "optimality conditions");
      }
    }
  }

  // Water-filling closed form on the support:
  //   p_c(i) = beta/(c*i*) * (ln(i*!) - i* ln(i)) + 1/i*.
  result.probs.assign(static_cast<std::size_t>(n), 0.0);
  const double log_fact_support = log_fact[static_cast<std::size_t>(support)];
  const double inv_support = 1.0 / static_cast<double>(support);
  long clamped = 0;
  for (int i = 1; i <= support; ++i) {
    const double v = beta / c * inv_support *
                         (log_fact_support - support * std::log(static_cast<double>(i))) +
                     inv_support;
    if (v < 0.0) {
      ++clamped;  // round-off at the support tail only
      result.probs[static_cast<std::size_t>(i - 1)] = 0.0;
    } else {
      result.probs[static_cast<std::size_t>(i - 1)] = v;
    }
  }
  (void)clamped;

  const double sum = std::accumulate(result.probs.begin(), result.probs.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw SolverError("solve_optimal_caching: closed-form mass drifted to " +
                      std::to_string(sum));
  }
  for (double& v : result.probs) v /= sum;

  result.support_index = support;
  while (result.support_index > 1 &&
         result.probs[static_cast<std::size_t>(result.support_index - 1)] == 0.0) {
    --result.support_index;  // only moves if a tail entry was clamped
  }

  // Water level from the KKT stationarity condition, with
  // x_i = ln(p_r(i)) / c = (-beta ln i - ln Z) / c.
  double zipf_norm = 0.0;
  for (int k = 1; k <= n; ++k) {
    zipf_norm += std::exp(-beta * std::log(static_cast<double>(k)));
  }
  const double sum_x = (-beta * log_fact_support - support * std::log(zipf_norm)) / c;
  result.multiplier = (sum_x - 1.0) / static_cast<double>(support);
  return result;
}

namespace {

// Euclidean projection onto the probability simplex (sort-based).
void project_to_simplex(std::vector<double>& v) {
  std::vector<double> sorted(v);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumsum += sorted[j];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  for (double& x : v) x = std::max(0.0, x - theta);
}

}  // namespace

std::vector<double> oracle_solve_caching(const DemandModel& demand,
                                         const NetworkConfig& net, double tolerance,
                                         int max_iterations) {
  demand.validate();
  net.validate();
  if (!(tolerance > 0.0)) throw std::invalid_argument("oracle: tolerance must be > 0");
  const std::size_t n = static_cast<std::size_t>(demand.catalog_size);
  const double c = net.user_density * kPi * net.collaboration_distance_m *
                   net.collaboration_distance_m;
  const std::vector<double> pr = request_probabilities(demand);

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> grad(n), probe(n), trial(n);

  auto fill_gradient = [&](const std::vector<double>& p, std::vector<double>& g) {
    for (std::size_t i = 0; i < n; ++i) g[i] = pr[i] * c * std::exp(-c * p[i]);
  };
  // The Hessian is diagonal with entries -p_r(i) c^2 exp(-c p_i), and each
  // coordinate gradient is convex in p_i, so the Lipschitz constant of the
  // gradient over the segment [p, q] is attained at the smaller endpoint:
  auto segment_lipschitz = [&](const std::vector<double>& p, const std::vector<double>& q) {
    double lip = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lip = std::max(lip, pr[i] * c * c * std::exp(-c * std::min(p[i], q[i])));
    }
    return lip;
  };

  double step = 1.0 / (c * c * pr[0] + 1.0);
  for (int iter = 0; iter < max_iterations; ++iter) {
    fill_gradient(x, grad);

    // First-order stationarity: x is optimal iff the projected gradient
    // mapping is zero, for any positive probe step. Probing at the inverse
    // local curvature keeps the measure meaningful even when the
    // exponentials saturate and gradients shrink to denormal scale.
    double local_curvature = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      local_curvature = std::max(local_curvature, pr[i] * c * c * std::exp(-c * x[i]));
    }
    const double probe_step = 1.0 / std::max(local_curvature, 1e-280);
    for (std::size_t i = 0; i < n; ++i) probe[i] = x[i] + probe_step * grad[i];
    project_to_simplex(probe);
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(probe[i] - x[i]));
    if (gap <= tolerance) return x;

    // Ascent step, shrinking until the step is below the inverse Lipschitz
    // constant along the actual move (guaranteed increase; no function-value
    // comparisons, so the test stays meaningful at tight tolerances). A step
    // too small to move x in floating point grows instead; the probe above
    // is the only arbiter of stationarity.
    bool moved = false;
    for (int tries = 0; tries < 200; ++tries) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + step * grad[i];
      project_to_simplex(trial);
      double move = 0.0;
      for (std::size_t i = 0; i < n; ++i) move = std::max(move, std::abs(trial[i] - x[i]));
      if (move == 0.0) {
        step *= 8.0;
        continue;
      }
      const double lip = segment_lipschitz(x, trial);
      if (step * lip <= 1.0) {
        x.swap(trial);
        // Grow toward the local curvature bound for the next iteration.
        double local = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          local = std::max(local, pr[i] * c * c * std::exp(-c * x[i]));
        }
        step = std::min(step * 2.0, 1.0 / std::max(local, 1e-280));
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      throw SolverError("oracle_solve_caching: step search stalled");
    }
  }
  throw SolverError("oracle_solve_caching: no convergence within " +
                    std::to_string(max_iterations) + " iterations");
}

}  // namespace d2d
