#pragma once

#include <span>
#include <vector>

#include "d2d/caching.hpp"
#include "d2d/model.hpp"
#include "d2d/power.hpp"

// Closed-form / quadrature evaluation of the link-distance density, the
// average helper energy per request, the energy-cost ratio, and tradeoff
// curves across collaboration distances.

namespace d2d {

// One point of an offloading-vs-energy tradeoff curve.
struct TradeoffPoint {
  double r_c_m = 0.0;
  double offloading_ratio = 0.0;
  double avg_energy_j = 0.0;                // average over all requests
  double avg_energy_per_offloaded_j = 0.0;  // avg_energy_j / offloading_ratio
  double energy_cost_ratio = 0.0;           // avg_energy_j / battery joules
  CachingPolicy caching_policy = CachingPolicy::optimal;
  PowerPolicy power_policy = PowerPolicy::optimal;
};

// Nearest-helper link distance density for one file cached with probability
// p: f(p, r) = 2*pi*r*lambda*p * exp(-lambda*p*pi*r^2). Rayleigh with scale
// set by the thinned helper density lambda*p.
double link_distance_pdf(const NetworkConfig& net, double caching_prob, double r);

// Tabulates the optimal-power link energy on a fixed r-grid so that the inner
// root-find is not repeated per quadrature node. E*(r) is smooth and
// increasing, so piecewise-linear interpolation preserves monotonicity.
class OptimalEnergyTable {
 public:
  OptimalEnergyTable(const RadioConfig& radio, const DemandModel& demand,
                     double r_max_m, double resolution_m);
  double energy(double r) const;

 private:
  double step_;
  std::vector<double> values_;
};

struct EnergyAveragingOptions {
  PowerPolicy power_policy = PowerPolicy::optimal;
  // Tabulate the optimal-power root-find on a 0.1 m grid (see
  // OptimalEnergyTable) and integrate over grid-aligned panels. Off by
  // default: the per-node cost here is dominated by the distance-density
  // mixture, not the root-find, so the direct adaptive path is both faster
  // and exact. The cache remains available for workloads with costlier
  // per-distance energy models.
  bool use_energy_cache = false;
  double cache_resolution_m = 0.1;
  double rel_tolerance = 1e-9;  // quadrature tolerance, relative to a coarse
                                // whole-interval estimate of the integral
};

// Average energy drawn from a helper per request, over files and link
// distances:
//   sum_i p_r(i) * integral_0^{r_c} E_policy(r) * f(p_c(i), r) dr.
// Requests that cannot be offloaded contribute zero, so this is the
// unconditional per-request average; divide by the offloading ratio for the
// per-offloaded-file figure.
double average_energy(const DemandModel& demand, const NetworkConfig& net,
                      const RadioConfig& radio, std::span<const double> caching,
                      const EnergyAveragingOptions& options = {});

double average_energy_per_offloaded_file(const DemandModel& demand,
                                         const NetworkConfig& net,
                                         const RadioConfig& radio,
                                         std::span<const double> caching,
                                         const EnergyAveragingOptions& options = {});

// avg_energy_j / (3.6 * V0 * Q). Throws std::domain_error for negative energy.
double energy_cost_ratio(double avg_energy_j, const BatteryConfig& battery);

// Re-solves caching (when the policy asks for it) and evaluates offloading,
// average energy and cost ratio for every collaboration distance in the grid.
// The grid must be non-empty and strictly increasing.
std::vector<TradeoffPoint> tradeoff_curve(const DemandModel& demand,
                                          const NetworkConfig& net,
                                          std::span<const double> r_c_grid_m,
                                          const RadioConfig& radio,
                                          const BatteryConfig& battery,
                                          CachingPolicy caching_policy,
                                          PowerPolicy power_policy,
                                          const EnergyAveragingOptions& options = {});

// Smallest collaboration distance achieving the target offloading ratio under
// the given caching policy (the ratio is non-decreasing in r_c). Bisection on
// [r_lo, r_hi]; throws SolverError if the target is not reachable at r_hi.
double collaboration_distance_for_offloading(const DemandModel& demand,
                                             const NetworkConfig& net,
                                             CachingPolicy caching_policy,
                                             double target_ratio, double r_lo_m,
                                             double r_hi_m);

}  // namespace d2d
