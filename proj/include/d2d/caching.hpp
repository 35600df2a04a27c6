#pragma once

#include <span>
#include <string>
#include <vector>

#include "d2d/model.hpp"

// Offloading-maximizing probabilistic caching.
//
// The problem: choose the caching distribution p_c over the catalog to
// maximize sum_i p_r(i) * (1 - exp(-lambda * p_c(i) * pi * r_c^2)) on the
// probability simplex. The objective is concave; the KKT system has a
// water-filling structure whose closed form is implemented in
// solve_optimal_caching. An independent projected-gradient solver is provided
// as a verification oracle.

namespace d2d {

enum class CachingPolicy { optimal, uniform };

std::string to_string(CachingPolicy p);
CachingPolicy caching_policy_from_string(const std::string& s);

struct CachingDistribution {
  std::vector<double> probs;  // probs[i-1] = p_c(i); non-increasing, sums to 1
  int support_index = 0;      // i*, 1-based: probs[i-1] > 0 iff i <= i*
  double multiplier = 0.0;    // water level v = (sum_{i<=i*} x_i - 1) / i*,
                              // x_i = ln(p_r(i)) / (lambda*pi*r_c^2)
};

// Offloading ratio for an arbitrary caching vector:
//   sum_i p_r(i) * (1 - exp(-lambda * p_c(i) * pi * r_c^2)).
// Throws ConfigError if the vector length does not match the catalog.
double offloading_ratio(const DemandModel& demand, const NetworkConfig& net,
                        std::span<const double> caching);

// Closed-form optimum via the water-filling structure. The support cutoff i*
// is located by integer search over the analytic bracket
//   c/beta - 1 <= i* <= c/beta + ln(sqrt(2*pi*N)) + 1   (c = lambda*pi*r_c^2),
// widened by one on each side, checking both boundary conditions
//   i* ln(i*+1) - ln(i*!) >= c/beta   and   i* ln(i*) - ln(i*!) < c/beta
// in the log domain. If no bracket integer qualifies (which would indicate an
// internal inconsistency) the search falls back to scanning 1..N and logs the
// discrepancy. beta = 0 short-circuits to the uniform vector.
CachingDistribution solve_optimal_caching(const DemandModel& demand,
                                          const NetworkConfig& net);

std::vector<double> uniform_caching(int catalog_size);

// Resolve a policy to a concrete caching vector.
std::vector<double> caching_for_policy(CachingPolicy policy,
                                       const DemandModel& demand,
                                       const NetworkConfig& net);

// Verification oracle: maximizes the offloading ratio over the simplex by
// projected gradient ascent with a per-step curvature bound, stopping when
// the unit-step projected-gradient mapping satisfies
//   || P(x + grad f(x)) - x ||_inf <= tolerance.
// Deliberately shares no code with the closed form above. Intended for tests;
// throws SolverError if the iteration cap is reached before convergence.
std::vector<double> oracle_solve_caching(const DemandModel& demand,
                                         const NetworkConfig& net,
                                         double tolerance,
                                         int max_iterations = 200000);

}  // namespace d2d
