#include "d2d/model.hpp"

#include <cmath>
#include <stdexcept>

#include "d2d/errors.hpp"

namespace d2d {

std::string to_string(Topology t) {
  return t == Topology::bounded_square ? "bounded_square" : "torus";
}

Topology topology_from_string(const std::string& s) {
  if (s == "bounded_square") return Topology::bounded_square;
  if (s == "torus") return Topology::torus;
  throw ConfigError("unknown topology: '" + s + "' (expected bounded_square or torus)");
}

void DemandModel::validate() const {
  if (catalog_size < 1) throw ConfigError("demand: catalog_size must be >= 1");
  if (!(zipf_exponent >= 0.0) || !std::isfinite(zipf_exponent))
    throw ConfigError("demand: zipf_exponent must be a finite value >= 0");
  if (!(file_size_bits > 0.0) || !std::isfinite(file_size_bits))
    throw ConfigError("demand: file_size_bits must be > 0");
}

void NetworkConfig::validate() const {
  if (!(user_density > 0.0)) throw ConfigError("net: user_density must be > 0");
  if (!(collaboration_distance_m > 0.0))
    throw ConfigError("net: collaboration_distance_m must be > 0");
  if (!(cell_side_m > 0.0)) throw ConfigError("net: cell_side_m must be > 0");
  if (collaboration_distance_m > cell_side_m)
    throw ConfigError("net: collaboration_distance_m must not exceed cell_side_m");
}

std::vector<std::string> RadioConfig::validate() const {
  if (!(bandwidth_hz > 0.0)) throw ConfigError("radio: bandwidth_hz must be > 0");
  if (!(noise_power_w > 0.0)) throw ConfigError("radio: noise_power_w must be > 0");
  if (!(max_tx_power_w > 0.0)) throw ConfigError("radio: max_tx_power_w must be > 0");
  if (!(circuit_power_w > 0.0)) throw ConfigError("radio: circuit_power_w must be > 0");
  if (!(amp_efficiency > 0.0) || amp_efficiency > 1.0)
    throw ConfigError("radio: amp_efficiency must be in (0, 1]");
  if (!(pathloss_exponent > 0.0))
    throw ConfigError("radio: pathloss_exponent must be > 0");
  std::vector<std::string> warnings;
  if (pathloss_exponent <= 2.0) {
    warnings.push_back(
        "radio: pathloss_exponent <= 2; unbounded-domain path-loss integrals "
        "diverge (bounded-cell analytics stay finite)");
  }
  return warnings;
}

void BatteryConfig::validate() const {
  if (!(capacity_mah > 0.0)) throw ConfigError("battery: capacity_mah must be > 0");
  if (!(voltage_v > 0.0)) throw ConfigError("battery: voltage_v must be > 0");
  if (!(energy_joules() > 0.0)) throw ConfigError("battery: energy must be > 0");
}

std::vector<double> request_probabilities(const DemandModel& demand) {
  demand.validate();
  const int n = demand.catalog_size;
  const double beta = demand.zipf_exponent;
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double w = std::exp(-beta * std::log(static_cast<double>(i)));
    p[static_cast<std::size_t>(i - 1)] = w;
    total += w;
  }
  for (double& v : p) v /= total;
  return p;
}

double path_gain(const RadioConfig& radio, double distance_m) {
  if (!(distance_m > 0.0))
    throw std::domain_error("path_gain: distance must be > 0");
  // loss_dB(r) = L0 + 10*alpha*log10(r); gain = 10^(-loss/10) = K * r^-alpha
  const double intercept = std::pow(10.0, -radio.pathloss_db_at_1m / 10.0);
  return intercept * std::pow(distance_m, -radio.pathloss_exponent);
}

}  // namespace d2d
