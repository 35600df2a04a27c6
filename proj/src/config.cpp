#include "d2d/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "d2d/csv.hpp"
#include "d2d/errors.hpp"
#include "d2d/units.hpp"

namespace d2d {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse number '" + value + "' for key " + key);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError("config: expected integer for key " + key + ", got '" + value + "'");
  return i;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse unsigned integer '" + value + "' for key " + key);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: expected true/false for key " + key + ", got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string cell = trim(item);
    if (cell.empty())
      throw ConfigError("config: empty element in list for key " + key);
    out.push_back(parse_double(key, cell));
  }
  if (out.empty()) throw ConfigError("config: empty list for key " + key);
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
  if (name != "paper-2015")
    throw ConfigError("unknown preset '" + name + "' (available: paper-2015)");
  return ExperimentConfig{};  // type defaults are the paper-2015 constants
}

void ExperimentConfig::apply_assignment(const std::string& raw_key,
                                        const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key.empty()) throw ConfigError("config: empty key");
  if (value.empty()) throw ConfigError("config: empty value for key " + key);

  if (key == "demand.catalog_size") {
    demand.catalog_size = parse_int(key, value);
  } else if (key == "demand.zipf_exponent") {
    demand.zipf_exponent = parse_double(key, value);
  } else if (key == "demand.file_size_mbytes") {
    demand.file_size_bits = units::mbytes_to_bits(parse_double(key, value));
  } else if (key == "net.user_density_per_m2") {
    net.user_density = parse_double(key, value);
  } else if (key == "net.collaboration_distance_m") {
    net.collaboration_distance_m = parse_double(key, value);
  } else if (key == "net.cell_side_m") {
    net.cell_side_m = parse_double(key, value);
  } else if (key == "net.topology") {
    net.topology = topology_from_string(value);
  } else if (key == "radio.bandwidth_mhz") {
    radio.bandwidth_hz = units::mhz_to_hz(parse_double(key, value));
  } else if (key == "radio.noise_dbm") {
    radio.noise_power_w = units::dbm_to_watts(parse_double(key, value));
  } else if (key == "radio.pathloss_db_at_1m") {
    radio.pathloss_db_at_1m = parse_double(key, value);
  } else if (key == "radio.pathloss_exponent") {
    radio.pathloss_exponent = parse_double(key, value);
  } else if (key == "radio.max_tx_power_dbm") {
    radio.max_tx_power_w = units::dbm_to_watts(parse_double(key, value));
  } else if (key == "radio.amp_efficiency") {
    radio.amp_efficiency = parse_double(key, value);
  } else if (key == "radio.circuit_power_mw") {
    radio.circuit_power_w = units::mw_to_watts(parse_double(key, value));
  } else if (key == "battery.voltage_v") {
    battery.voltage_v = parse_double(key, value);
  } else if (key == "battery.capacity_mah") {
    battery.capacity_mah = parse_double(key, value);
  } else if (key == "policy.caching") {
    policy.caching = caching_policy_from_string(value);
  } else if (key == "policy.power") {
    policy.power = power_policy_from_string(value);
  } else if (key == "sweep.axis") {
    if (value != "none" && value != "r_c" && value != "beta" && value != "lambda" &&
        value != "noise_dbm" && value != "r") {
      throw ConfigError("config: unknown sweep.axis '" + value +
                        "' (expected none, r_c, beta, lambda, noise_dbm or r)");
    }
    sweep.axis = value;
  } else if (key == "sweep.values") {
    sweep.values = parse_list(key, value);
  } else if (key == "mc.realizations") {
    mc.realizations = parse_int(key, value);
  } else if (key == "mc.master_seed") {
    mc.master_seed = parse_u64(key, value);
  } else if (key == "mc.self_cache_hit") {
    mc.self_cache = self_cache_policy_from_string(value);
  } else if (key == "mc.fading_diag") {
    mc.fading_diag = parse_bool(key, value);
  } else if (key == "mc.fading_draws") {
    mc.fading_draws = parse_int(key, value);
  } else if (key == "mc.threads") {
    mc.threads = parse_int(key, value);
  } else if (key == "output.dir") {
    output_dir = value;
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void ExperimentConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open file " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: missing '=' at " + path + ":" + std::to_string(line_no));
    }
    try {
      apply_assignment(body.substr(0, eq), body.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(e.what()) + " (" + path + ":" +
                        std::to_string(line_no) + ")");
    }
  }
}

std::vector<std::string> ExperimentConfig::validate() const {
  demand.validate();
  net.validate();
  battery.validate();
  std::vector<std::string> warnings = radio.validate();
  if (mc.realizations < 1) throw ConfigError("mc: realizations must be >= 1");
  if (mc.fading_draws < 1) throw ConfigError("mc: fading_draws must be >= 1");
  if (mc.threads < 0) throw ConfigError("mc: threads must be >= 0");
  for (std::size_t i = 1; i < sweep.values.size(); ++i) {
    if (!(sweep.values[i] > sweep.values[i - 1]))
      throw ConfigError("sweep.values must be strictly increasing");
  }
  return warnings;
}

std::string ExperimentConfig::serialize() const {
  std::string out;
  auto emit = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  };
  auto num = [](double v) { return csv::format_double(v); };

  emit("demand.catalog_size", std::to_string(demand.catalog_size));
  emit("demand.zipf_exponent", num(demand.zipf_exponent));
  emit("demand.file_size_mbytes", num(units::bits_to_mbytes(demand.file_size_bits)));
  emit("net.user_density_per_m2", num(net.user_density));
  emit("net.collaboration_distance_m", num(net.collaboration_distance_m));
  emit("net.cell_side_m", num(net.cell_side_m));
  emit("net.topology", to_string(net.topology));
  emit("radio.bandwidth_mhz", num(units::hz_to_mhz(radio.bandwidth_hz)));
  emit("radio.noise_dbm", num(units::watts_to_dbm(radio.noise_power_w)));
  emit("radio.pathloss_db_at_1m", num(radio.pathloss_db_at_1m));
  emit("radio.pathloss_exponent", num(radio.pathloss_exponent));
  emit("radio.max_tx_power_dbm", num(units::watts_to_dbm(radio.max_tx_power_w)));
  emit("radio.amp_efficiency", num(radio.amp_efficiency));
  emit("radio.circuit_power_mw", num(units::watts_to_mw(radio.circuit_power_w)));
  emit("battery.voltage_v", num(battery.voltage_v));
  emit("battery.capacity_mah", num(battery.capacity_mah));
  emit("policy.caching", to_string(policy.caching));
  emit("policy.power", to_string(policy.power));
  emit("sweep.axis", sweep.axis);
  if (!sweep.values.empty()) {
    std::string list;
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
      if (i) list += ", ";
      list += num(sweep.values[i]);
    }
    emit("sweep.values", list);
  }
  emit("mc.realizations", std::to_string(mc.realizations));
  emit("mc.master_seed", std::to_string(mc.master_seed));
  emit("mc.self_cache_hit", to_string(mc.self_cache));
  emit("mc.fading_diag", mc.fading_diag ? "true" : "false");
  emit("mc.fading_draws", std::to_string(mc.fading_draws));
  emit("mc.threads", std::to_string(mc.threads));
  emit("output.dir", output_dir);
  return out;
}

}  // namespace d2d
