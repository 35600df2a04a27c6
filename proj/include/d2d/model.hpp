#pragma once

#include <string>
#include <vector>

// Core domain types and the two elementary model functions everything else
// consumes: Zipf request probabilities and the deterministic dB path-gain law.
//
// All types default to the bundled "paper-2015" experiment preset; the
// configuration layer overrides fields from key/value files.

namespace d2d {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Content catalog and per-file demand. Request probabilities follow a Zipf
// law: p_r(i) = i^-beta / sum_k k^-beta, files indexed from 1 by decreasing
// popularity.
struct DemandModel {
  int catalog_size = 1000;            // number of files in the catalog
  double zipf_exponent = 1.0;         // beta >= 0; 0 means uniform demand
  double file_size_bits = 2.4e8;      // 30 decimal Mbytes

  void validate() const;  // throws ConfigError on violated invariants
};

enum class Topology { bounded_square, torus };

std::string to_string(Topology t);
Topology topology_from_string(const std::string& s);

// Cell geometry and the user field: a Poisson point process with the given
// density, simulated inside a square cell. The collaboration distance is the
// maximum range at which a helper serves a request.
struct NetworkConfig {
  double user_density = 0.03;               // users per m^2
  double collaboration_distance_m = 100.0;  // r_c
  double cell_side_m = 1000.0;
  Topology topology = Topology::bounded_square;

  void validate() const;
};

// Physical-layer constants. The path-gain law is
//   gain(r) = 10^-(L0 + 10*alpha*log10(r))/10 = 10^(-L0/10) * r^-alpha,
// with L0 the dB intercept at 1 m. Setting L0 = 0 recovers the bare
// r^-alpha law used by the analytic expressions.
struct RadioConfig {
  double bandwidth_hz = 20e6;
  double noise_power_w = 3.1622776601683796e-13;  // -95 dBm noise-plus-interference floor
  double pathloss_db_at_1m = 37.6;
  double pathloss_exponent = 3.68;
  double max_tx_power_w = 0.19952623149688797;    // 23 dBm
  double amp_efficiency = 0.2;                    // eta in (0, 1]
  double circuit_power_w = 0.1159;

  // Hard invariant violations throw ConfigError. Returns non-fatal warnings
  // (e.g. pathloss exponent <= 2, where unbounded-domain integrals would
  // diverge; bounded-cell analytics stay finite).
  std::vector<std::string> validate() const;
};

// Device battery, used only to normalize energies into a cost ratio.
struct BatteryConfig {
  double capacity_mah = 1800.0;
  double voltage_v = 4.0;

  // 3.6 * V0 * Q joules.
  double energy_joules() const { return 3.6 * voltage_v * capacity_mah; }
  void validate() const;
};

// Zipf request probabilities; entry i-1 is p_r(i). Non-increasing, sums to 1.
std::vector<double> request_probabilities(const DemandModel& demand);

// Linear power gain at the given distance; strictly decreasing in distance.
// Throws std::domain_error for distance <= 0.
double path_gain(const RadioConfig& radio, double distance_m);

}  // namespace d2d
