#pragma once

#include <string>

#include "d2d/model.hpp"

// Per-link energy model and the energy-minimal transmit-power solver.
//
// A file of F bits is sent at the fading-averaged rate
//   R(P, r) = W * log2(1 + P * gain(r) / sigma0^2),
// taking time F/R and drawing P/eta + Pc watts at the transmitter. With
// y = 1 + P*gain/sigma0^2 the energy is stationary where
//   g(y) = y*ln(y) - y - eps = 0,   eps = gain*eta*Pc/sigma0^2 - 1,
// and g is strictly increasing on y > 1 with g(1+) = -(1+eps) < 0, so either
// g(y0) <= 0 at the power cap (energy decreasing everywhere: transmit at
// P_max) or there is a unique interior root.

namespace d2d {

enum class PowerPolicy { optimal, max_power };

std::string to_string(PowerPolicy p);
PowerPolicy power_policy_from_string(const std::string& s);

struct LinkEnergyResult {
  double tx_power_w = 0.0;     // in (0, P_max]
  double energy_joules = 0.0;  // (F / rate) * (tx_power/eta + Pc)
  double rate_bps = 0.0;
  double epsilon = 0.0;        // gain*eta*Pc/sigma0^2 - 1
  bool at_max_power = false;
};

// Fading-averaged rate in bits/s. Throws std::domain_error for
// non-positive power or distance.
double mean_rate(const RadioConfig& radio, double tx_power_w, double distance_m);

// Energy in joules to push one file across the link at the given power.
// Returns +infinity when the rate underflows to zero (SNR ~ 0); callers can
// detect the sentinel with std::isinf.
double link_energy(const RadioConfig& radio, const DemandModel& demand,
                   double tx_power_w, double distance_m);

// Energy-minimal transmit power for one link. The interior root is found by
// bisection on g(y) over (1, y0] to |g| <= 1e-12 * max(1, |eps|) with a fixed
// 200-iteration cap; the case split is exhaustive, so this never fails.
LinkEnergyResult solve_optimal_power(const RadioConfig& radio,
                                     const DemandModel& demand,
                                     double distance_m);

// Energy under a named power policy (optimal solve or fixed P_max).
double link_energy_for_policy(const RadioConfig& radio, const DemandModel& demand,
                              PowerPolicy policy, double distance_m);

}  // namespace d2d
