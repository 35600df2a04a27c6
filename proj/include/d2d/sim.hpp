#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "d2d/caching.hpp"
#include "d2d/model.hpp"
#include "d2d/power.hpp"

// Monte Carlo stochastic-geometry simulator: Poisson user placement in a
// square cell, probabilistic cache assignment, Zipf requests, nearest-helper
// matching within the collaboration distance, per-link energy accounting.
// Interference between concurrent links is not simulated; the noise floor in
// RadioConfig already folds it in.

namespace d2d {

// One sampled cell. User count ~ Poisson(lambda * side^2), positions i.i.d.
// uniform, cached/requested file ids (1-based) i.i.d. from the caching and
// request distributions. Fully determined by rng_seed.
struct CellRealization {
  std::vector<double> x_m;
  std::vector<double> y_m;
  std::vector<std::int32_t> cached_file;
  std::vector<std::int32_t> requested_file;
  std::uint64_t rng_seed = 0;

  std::size_t user_count() const { return x_m.size(); }
};

struct LinkDistanceStats {
  std::int64_t count = 0;
  double mean_m = 0.0;
  double p50_m = 0.0;
  double p90_m = 0.0;
  double max_m = 0.0;
};

struct SimReport {
  std::int64_t num_requests = 0;
  std::int64_t num_offloaded = 0;
  double empirical_offloading_ratio = 0.0;
  double empirical_avg_energy_j = 0.0;  // zero for requests served by the BS
  // 95% normal-approximation half-width for the offloading ratio: binomial
  // within a single realization, between-realization spread for campaigns.
  double ci_halfwidth = 0.0;
  LinkDistanceStats link_distances;
  int realizations = 1;
  // Mean relative gap between the fading-averaged rate estimate and the
  // log2(1+SNR) approximation; 0 unless the fading diagnostic is enabled.
  double fading_rate_rel_err = 0.0;
};

// Whether a user whose own cache holds the requested file counts as served
// locally (zero-energy offload) or is excluded, matching the analytic model
// where helpers form a field independent of the requester.
enum class SelfCachePolicy { exclude, local_hit };

std::string to_string(SelfCachePolicy p);
SelfCachePolicy self_cache_policy_from_string(const std::string& s);

struct SimOptions {
  PowerPolicy power_policy = PowerPolicy::optimal;
  SelfCachePolicy self_cache = SelfCachePolicy::exclude;
  bool fading_diagnostic = false;
  int fading_draws = 10000;
  int threads = 1;  // 0 = hardware concurrency (campaigns only)
  // When non-zero, matched link distances for this file id are collected into
  // the out_file_distances sink of match_and_measure / run_campaign.
  int collect_distances_for_file = 0;
};

// Draws one cell. The caching vector length must match the catalog.
CellRealization sample_cell(const DemandModel& demand, const NetworkConfig& net,
                            std::span<const double> caching, std::uint64_t seed);

// Matches every user to its nearest helper caching the requested file within
// the collaboration distance (grid-accelerated, exact) and accounts energy
// per matched link. Optional sinks receive all matched link distances and the
// distances for the file selected in options.
SimReport match_and_measure(const CellRealization& cell, const NetworkConfig& net,
                            const RadioConfig& radio, const DemandModel& demand,
                            const SimOptions& options = {},
                            std::vector<double>* out_link_distances = nullptr,
                            std::vector<double>* out_file_distances = nullptr);

// Aggregates independently seeded realizations (seed_k = derive_seed(master,
// k)). Realizations are computed in parallel when options.threads != 1, with
// a deterministic ordered reduction: results are byte-identical for any
// thread count.
SimReport run_campaign(const DemandModel& demand, const NetworkConfig& net,
                       const RadioConfig& radio, CachingPolicy caching_policy,
                       int num_realizations, std::uint64_t master_seed,
                       const SimOptions& options = {},
                       std::vector<double>* out_file_distances = nullptr);

// As above with an explicit caching vector.
SimReport run_campaign_with_caching(const DemandModel& demand,
                                    const NetworkConfig& net,
                                    const RadioConfig& radio,
                                    std::span<const double> caching,
                                    int num_realizations, std::uint64_t master_seed,
                                    const SimOptions& options = {},
                                    std::vector<double>* out_file_distances = nullptr);

}  // namespace d2d
