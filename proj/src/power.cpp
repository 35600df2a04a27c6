#include "d2d/power.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "d2d/errors.hpp"

namespace d2d {

std::string to_string(PowerPolicy p) {
  return p == PowerPolicy::optimal ? "optimal" : "max";
}

PowerPolicy power_policy_from_string(const std::string& s) {
  if (s == "optimal") return PowerPolicy::optimal;
  if (s == "max" || s == "max_power") return PowerPolicy::max_power;
  throw ConfigError("unknown power policy: '" + s + "' (expected optimal or max)");
}

double mean_rate(const RadioConfig& radio, double tx_power_w, double distance_m) {
  if (!(tx_power_w > 0.0)) throw std::domain_error("mean_rate: tx power must be > 0");
  const double snr = tx_power_w * path_gain(radio, distance_m) / radio.noise_power_w;
  return radio.bandwidth_hz * std::log2(1.0 + snr);
}

double link_energy(const RadioConfig& radio, const DemandModel& demand,
                   double tx_power_w, double distance_m) {
  const double rate = mean_rate(radio, tx_power_w, distance_m);
  if (!(rate > 0.0)) {
    // SNR underflowed; make the failure explicit instead of returning a
    // gigantic finite number.
    return std::numeric_limits<double>::infinity();
  }
  return demand.file_size_bits / rate *
         (tx_power_w / radio.amp_efficiency + radio.circuit_power_w);
}

LinkEnergyResult solve_optimal_power(const RadioConfig& radio, const DemandModel& demand,
                                     double distance_m) {
  const double gain = path_gain(radio, distance_m);
  const double snr_per_watt = gain / radio.noise_power_w;
  const double epsilon =
      snr_per_watt * radio.amp_efficiency * radio.circuit_power_w - 1.0;
  const double y_max = 1.0 + radio.max_tx_power_w * snr_per_watt;

  auto g = [epsilon](double y) { return y * std::log(y) - y - epsilon; };

  LinkEnergyResult result;
  result.epsilon = epsilon;

  double y;
  if (g(y_max) <= 0.0) {
    // Energy is decreasing over the whole feasible range: cap at P_max. This
    // branch also covers epsilon in (-1, 0) with tiny gain (long links).
    y = y_max;
    result.tx_power_w = radio.max_tx_power_w;
    result.at_max_power = true;
  } else {
    // g(1+) = -(1+eps) < 0 and g(y_max) > 0 with g strictly increasing
    // (g'(y) = ln y > 0), so the root is unique. Bisection, fixed cap.
    const double tol = 1e-12 * std::max(1.0, std::abs(epsilon));
    double lo = 1.0;
    double hi = y_max;
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
      mid = 0.5 * (lo + hi);
      const double value = g(mid);
      if (std::abs(value) <= tol) break;
      if (value < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    y = mid;
    result.tx_power_w = (y - 1.0) / snr_per_watt;
    result.at_max_power = false;
  }

  result.rate_bps = radio.bandwidth_hz * std::log2(y);
  result.energy_joules =
      demand.file_size_bits / result.rate_bps *
      (result.tx_power_w / radio.amp_efficiency + radio.circuit_power_w);
  return result;
}

double link_energy_for_policy(const RadioConfig& radio, const DemandModel& demand,
                              PowerPolicy policy, double distance_m) {
  if (policy == PowerPolicy::max_power) {
    return link_energy(radio, demand, radio.max_tx_power_w, distance_m);
  }
  return solve_optimal_power(radio, demand, distance_m).energy_joules;
}

}  // namespace d2d
