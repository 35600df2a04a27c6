#include "d2d/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "d2d/errors.hpp"
#include "d2d/quadrature.hpp"

namespace d2d {

double link_distance_pdf(const NetworkConfig& net, double caching_prob, double r) {
  if (caching_prob < 0.0)
    throw std::domain_error("link_distance_pdf: caching probability must be >= 0");
  if (r < 0.0) throw std::domain_error("link_distance_pdf: distance must be >= 0");
  const double density = net.user_density * caching_prob;
  return 2.0 * kPi * r * density * std::exp(-density * kPi * r * r);
}

OptimalEnergyTable::OptimalEnergyTable(const RadioConfig& radio,
                                       const DemandModel& demand, double r_max_m,
                                       double resolution_m)
    : step_(resolution_m) {
  if (!(resolution_m > 0.0))
    throw std::invalid_argument("OptimalEnergyTable: resolution must be > 0");
  const std::size_t count =
      static_cast<std::size_t>(std::ceil(r_max_m / resolution_m)) + 1;
  values_.resize(count + 1);
  values_[0] = 0.0;  // E*(r) -> 0 as r -> 0 (rate blows up, duration vanishes)
  for (std::size_t k = 1; k < values_.size(); ++k) {
    values_[k] = solve_optimal_power(radio, demand, step_ * static_cast<double>(k))
                     .energy_joules;
  }
}

double OptimalEnergyTable::energy(double r) const {
  if (r <= 0.0) return 0.0;
  const double pos = r / step_;
  std::size_t idx = static_cast<std::size_t>(pos);
  if (idx + 1 >= values_.size()) return values_.back();
  const double frac = pos - static_cast<double>(idx);
  return values_[idx] + frac * (values_[idx + 1] - values_[idx]);
}

namespace {

// Distinct positive caching probabilities with their aggregated request mass;
// the density term is identical within a group (one term for uniform caching
// instead of one per file).
struct WeightGroup {
  double caching_prob;
  double request_mass;
};

std::vector<WeightGroup> group_by_caching_prob(std::span<const double> caching,
                                               const std::vector<double>& request) {
  std::vector<WeightGroup> groups;
  for (std::size_t i = 0; i < caching.size(); ++i) {
    if (caching[i] <= 0.0) continue;
    if (!groups.empty() && groups.back().caching_prob == caching[i]) {
      groups.back().request_mass += request[i];
    } else {
      groups.push_back({caching[i], request[i]});
    }
  }
  return groups;
}

}  // namespace

double average_energy(const DemandModel& demand, const NetworkConfig& net,
                      const RadioConfig& radio, std::span<const double> caching,
                      const EnergyAveragingOptions& options) {
  demand.validate();
  net.validate();
  radio.validate();
  if (caching.size() != static_cast<std::size_t>(demand.catalog_size)) {
    throw ConfigError("average_energy: caching vector length does not match catalog");
  }
  const double r_c = net.collaboration_distance_m;
  const std::vector<double> request = request_probabilities(demand);
  const std::vector<WeightGroup> groups = group_by_caching_prob(caching, request);
  if (groups.empty()) return 0.0;

  const double lambda_pi = net.user_density * kPi;
  auto nearest_helper_weight = [&](double r) {
    double w = 0.0;
    for (const WeightGroup& g : groups) {
      const double density = lambda_pi * g.caching_prob;
      w += g.request_mass * 2.0 * density * r * std::exp(-density * r * r);
    }
    return w;
  };

  const bool cached =
      options.power_policy == PowerPolicy::optimal && options.use_energy_cache;
  std::optional<OptimalEnergyTable> table;
  if (cached) table.emplace(radio, demand, r_c, options.cache_resolution_m);

  auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    double energy;
    if (options.power_policy == PowerPolicy::max_power) {
      energy = link_energy(radio, demand, radio.max_tx_power_w, r);
    } else if (cached) {
      energy = table->energy(r);
    } else {
      energy = solve_optimal_power(radio, demand, r).energy_joules;
    }
    return energy * nearest_helper_weight(r);
  };

  if (cached) {
    // The interpolated integrand is piecewise linear in the energy factor, so
    // an adaptive splitter would chase every interpolation kink. Fixed panels
    // aligned with the table grid integrate each linear piece directly.
    const double h = options.cache_resolution_m;
    double total = 0.0;
    double compensation = 0.0;
    const int panels = static_cast<int>(std::ceil(r_c / h));
    for (int k = 0; k < panels; ++k) {
      const double lo = k * h;
      const double hi = std::min(r_c, lo + h);
      if (!(hi > lo)) break;
      const double value = detail::kronrod_panel(integrand, lo, hi).first;
      if (!std::isfinite(value)) {
        throw QuadratureError("average_energy: non-finite integrand", lo, hi);
      }
      const double y = value - compensation;
      const double t = total + y;
      compensation = (t - total) - y;
      total = t;
    }
    return total;
  }

  // Coarse single-panel estimate fixes the absolute tolerance scale.
  const double coarse = std::abs(detail::kronrod_panel(integrand, 0.0, r_c).first);
  const double abs_tol = options.rel_tolerance * std::max(coarse, 1e-30);
  return integrate_adaptive(integrand, 0.0, r_c, abs_tol);
}

double average_energy_per_offloaded_file(const DemandModel& demand,
                                         const NetworkConfig& net,
                                         const RadioConfig& radio,
                                         std::span<const double> caching,
                                         const EnergyAveragingOptions& options) {
  const double ratio = offloading_ratio(demand, net, caching);
  if (ratio <= 0.0) return 0.0;
  return average_energy(demand, net, radio, caching, options) / ratio;
}

double energy_cost_ratio(double avg_energy_j, const BatteryConfig& battery) {
  battery.validate();
  if (avg_energy_j < 0.0)
    throw std::domain_error("energy_cost_ratio: energy must be >= 0");
  return avg_energy_j / battery.energy_joules();
}

std::vector<TradeoffPoint> tradeoff_curve(const DemandModel& demand,
                                          const NetworkConfig& net,
                                          std::span<const double> r_c_grid_m,
                                          const RadioConfig& radio,
                                          const BatteryConfig& battery,
                                          CachingPolicy caching_policy,
                                          PowerPolicy power_policy,
                                          const EnergyAveragingOptions& options) {
  if (r_c_grid_m.empty()) throw ConfigError("tradeoff_curve: empty r_c grid");
  for (std::size_t i = 1; i < r_c_grid_m.size(); ++i) {
    if (!(r_c_grid_m[i] > r_c_grid_m[i - 1]))
      throw ConfigError("tradeoff_curve: r_c grid must be strictly increasing");
  }
  EnergyAveragingOptions opts = options;
  opts.power_policy = power_policy;

  std::vector<TradeoffPoint> curve;
  curve.reserve(r_c_grid_m.size());
  for (double r_c : r_c_grid_m) {
    NetworkConfig point_net = net;
    point_net.collaboration_distance_m = r_c;
    try {
      const std::vector<double> caching =
          caching_for_policy(caching_policy, demand, point_net);
      TradeoffPoint point;
      point.r_c_m = r_c;
      point.caching_policy = caching_policy;
      point.power_policy = power_policy;
      point.offloading_ratio = offloading_ratio(demand, point_net, caching);
      point.avg_energy_j = average_energy(demand, point_net, radio, caching, opts);
      point.avg_energy_per_offloaded_j =
          point.offloading_ratio > 0.0 ? point.avg_energy_j / point.offloading_ratio
                                       : 0.0;
      point.energy_cost_ratio = energy_cost_ratio(point.avg_energy_j, battery);
      curve.push_back(point);
    } catch (const QuadratureError& e) {
      throw QuadratureError("tradeoff_curve at r_c = " + std::to_string(r_c) + ": " +
                                e.what(),
                            e.interval_begin(), e.interval_end());
    } catch (const SolverError& e) {
      throw SolverError("tradeoff_curve at r_c = " + std::to_string(r_c) + ": " +
                        e.what());
    }
  }
  return curve;
}

double collaboration_distance_for_offloading(const DemandModel& demand,
                                             const NetworkConfig& net,
                                             CachingPolicy caching_policy,
                                             double target_ratio, double r_lo_m,
                                             double r_hi_m) {
  if (!(target_ratio > 0.0) || !(target_ratio < 1.0))
    throw std::invalid_argument("target offloading ratio must be in (0, 1)");
  if (!(r_lo_m > 0.0) || !(r_hi_m > r_lo_m))
    throw std::invalid_argument("invalid bisection range");
  auto ratio_at = [&](double r_c) {
    NetworkConfig point_net = net;
    point_net.collaboration_distance_m = r_c;
    const std::vector<double> caching =
        caching_for_policy(caching_policy, demand, point_net);
    return offloading_ratio(demand, point_net, caching);
  };
  if (ratio_at(r_hi_m) < target_ratio) {
    throw SolverError("collaboration_distance_for_offloading: target " +
                      std::to_string(target_ratio) + " not reachable by r_c = " +
                      std::to_string(r_hi_m));
  }
  double lo = r_lo_m;
  double hi = r_hi_m;
  if (ratio_at(lo) >= target_ratio) return lo;
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (ratio_at(mid) < target_ratio) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace d2d
