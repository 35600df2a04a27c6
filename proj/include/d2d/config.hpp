#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2d/analytics.hpp"
#include "d2d/model.hpp"
#include "d2d/sim.hpp"

// Experiment configuration: a flat key/value text format with sectioned keys,
//
//   # comment
//   radio.noise_dbm = -95
//   sweep.axis      = r_c
//   sweep.values    = 10, 20, 50, 100
//
// Unknown keys are an error. Units are converted once at this boundary
// (dBm, MHz, Mbytes, mW, mAh); everything downstream is SI. One file fully
// determines a run and is copied next to the outputs for provenance.

namespace d2d {

struct SweepSpec {
  std::string axis = "none";  // none | r_c | beta | lambda | noise_dbm | r
  std::vector<double> values;
};

struct McConfig {
  int realizations = 50;
  std::uint64_t master_seed = 1;
  SelfCachePolicy self_cache = SelfCachePolicy::exclude;
  bool fading_diag = false;
  int fading_draws = 10000;
  int threads = 0;  // 0 = hardware concurrency
};

struct PolicyConfig {
  CachingPolicy caching = CachingPolicy::optimal;
  PowerPolicy power = PowerPolicy::optimal;
};

struct ExperimentConfig {
  DemandModel demand;
  NetworkConfig net;
  RadioConfig radio;
  BatteryConfig battery;
  PolicyConfig policy;
  SweepSpec sweep;
  McConfig mc;
  std::string output_dir = "out";

  // Named presets; the type defaults are the `paper-2015` preset.
  static ExperimentConfig preset(const std::string& name);

  // Overlay assignments from a config file / single key. ConfigError on
  // unknown keys or unparsable values.
  void apply_file(const std::string& path);
  void apply_assignment(const std::string& key, const std::string& value);

  // Validates every section; returns non-fatal warnings.
  std::vector<std::string> validate() const;

  // Full effective configuration in the same key/value format (boundary
  // units), suitable for provenance copies and round-tripping.
  std::string serialize() const;
};

}  // namespace d2d
