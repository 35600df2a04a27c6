#include "d2d/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "d2d/errors.hpp"
#include "d2d/rng.hpp"

namespace d2d {

std::string to_string(SelfCachePolicy p) {
  return p == SelfCachePolicy::exclude ? "exclude" : "local_hit";
}

SelfCachePolicy self_cache_policy_from_string(const std::string& s) {
  if (s == "exclude") return SelfCachePolicy::exclude;
  if (s == "local_hit") return SelfCachePolicy::local_hit;
  throw ConfigError("unknown self_cache_hit policy: '" + s +
                    "' (expected exclude or local_hit)");
}

CellRealization sample_cell(const DemandModel& demand, const NetworkConfig& net,
                            std::span<const double> caching, std::uint64_t seed) {
  demand.validate();
  net.validate();
  if (caching.size() != static_cast<std::size_t>(demand.catalog_size)) {
    throw ConfigError("sample_cell: caching vector length does not match catalog");
  }
  const double side = net.cell_side_m;
  SplitMix64 rng(seed);

  CellRealization cell;
  cell.rng_seed = seed;
  const long long count = sample_poisson(rng, net.user_density * side * side);
  const std::size_t n = static_cast<std::size_t>(count);
  cell.x_m.resize(n);
  cell.y_m.resize(n);
  cell.cached_file.resize(n);
  cell.requested_file.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    cell.x_m[i] = rng.next_double() * side;
    cell.y_m[i] = rng.next_double() * side;
  }
  const DiscreteSampler cache_sampler(caching);
  const DiscreteSampler request_sampler(request_probabilities(demand));
  for (std::size_t i = 0; i < n; ++i) {
    cell.cached_file[i] = static_cast<std::int32_t>(cache_sampler.sample(rng) + 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    cell.requested_file[i] = static_cast<std::int32_t>(request_sampler.sample(rng) + 1);
  }
  return cell;
}

namespace {

// Uniform bucket grid with cell edge >= r_c: every point within r_c of a
// query lies in the query's 3x3 bucket neighborhood. Exact, O(1) expected
// per query at the densities simulated here.
class BucketGrid {
 public:
  BucketGrid(const CellRealization& cell, double side, double r_c, bool torus)
      : torus_(torus) {
    cells_per_axis_ = std::max(1, static_cast<int>(std::floor(side / r_c)));
    cell_edge_ = side / cells_per_axis_;
    const std::size_t n = cell.user_count();
    const std::size_t buckets =
        static_cast<std::size_t>(cells_per_axis_) * cells_per_axis_;
    start_.assign(buckets + 1, 0);
    std::vector<std::int32_t> bucket_of(n);
    for (std::size_t i = 0; i < n; ++i) {
      bucket_of[i] = bucket_index(cell.x_m[i], cell.y_m[i]);
      ++start_[static_cast<std::size_t>(bucket_of[i]) + 1];
    }
    for (std::size_t b = 1; b < start_.size(); ++b) start_[b] += start_[b - 1];
    order_.resize(n);
    std::vector<std::int32_t> cursor(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      order_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(bucket_of[i])]++)] =
          static_cast<std::int32_t>(i);
    }
  }

  template <typename Visitor>
  void visit_neighborhood(double x, double y, Visitor&& visit) const {
    const int cx = axis_index(x);
    const int cy = axis_index(y);
    int seen[9];
    int seen_count = 0;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        int nx = cx + dx;
        int ny = cy + dy;
        if (torus_) {
          nx = (nx + cells_per_axis_) % cells_per_axis_;
          ny = (ny + cells_per_axis_) % cells_per_axis_;
        } else if (nx < 0 || ny < 0 || nx >= cells_per_axis_ || ny >= cells_per_axis_) {
          continue;
        }
        const int bucket = ny * cells_per_axis_ + nx;
        bool duplicate = false;
        for (int s = 0; s < seen_count; ++s) {
          if (seen[s] == bucket) {
            duplicate = true;
            break;
          }
        }
        if (duplicate) continue;
        seen[seen_count++] = bucket;
        for (std::int32_t k = start_[static_cast<std::size_t>(bucket)];
             k < start_[static_cast<std::size_t>(bucket) + 1]; ++k) {
          visit(order_[static_cast<std::size_t>(k)]);
        }
      }
    }
  }

 private:
  int axis_index(double v) const {
    const int idx = static_cast<int>(v / cell_edge_);
    return std::clamp(idx, 0, cells_per_axis_ - 1);
  }
  std::int32_t bucket_index(double x, double y) const {
    return static_cast<std::int32_t>(axis_index(y) * cells_per_axis_ + axis_index(x));
  }

  bool torus_;
  int cells_per_axis_ = 1;
  double cell_edge_ = 0.0;
  std::vector<std::int32_t> start_;
  std::vector<std::int32_t> order_;
};

double squared_distance(double ax, double ay, double bx, double by, double side,
                        bool torus) {
  double dx = std::abs(ax - bx);
  double dy = std::abs(ay - by);
  if (torus) {
    if (dx > 0.5 * side) dx = side - dx;
    if (dy > 0.5 * side) dy = side - dy;
  }
  return dx * dx + dy * dy;
}

LinkDistanceStats distance_stats(std::vector<double>& distances) {
  LinkDistanceStats stats;
  stats.count = static_cast<std::int64_t>(distances.size());
  if (distances.empty()) return stats;
  std::sort(distances.begin(), distances.end());
  stats.mean_m = std::accumulate(distances.begin(), distances.end(), 0.0) /
                 static_cast<double>(distances.size());
  const std::size_t last = distances.size() - 1;
  stats.p50_m = distances[last / 2];
  stats.p90_m = distances[(9 * last) / 10];
  stats.max_m = distances[last];
  return stats;
}

double binomial_halfwidth(double ratio, std::int64_t n) {
  if (n <= 0) return 0.0;
  return 1.96 * std::sqrt(std::max(ratio * (1.0 - ratio), 0.0) / static_cast<double>(n));
}

}  // namespace

SimReport match_and_measure(const CellRealization& cell, const NetworkConfig& net,
                            const RadioConfig& radio, const DemandModel& demand,
                            const SimOptions& options,
                            std::vector<double>* out_link_distances,
                            std::vector<double>* out_file_distances) {
  net.validate();
  radio.validate();
  demand.validate();
  const std::size_t n = cell.user_count();
  SimReport report;
  report.num_requests = static_cast<std::int64_t>(n);
  if (n == 0) return report;

  const bool torus = net.topology == Topology::torus;
  const double side = net.cell_side_m;
  const double r_c = net.collaboration_distance_m;
  const double r_c_sq = r_c * r_c;
  const BucketGrid grid(cell, side, r_c, torus);

  // Separate stream for the fading diagnostic so matching stays untouched.
  SplitMix64 fading_rng(derive_seed(cell.rng_seed, 0xFAD1A6ull));
  double fading_err_sum = 0.0;
  std::int64_t fading_links = 0;

  std::vector<double> matched;
  matched.reserve(n);
  double energy_sum = 0.0;

  for (std::size_t u = 0; u < n; ++u) {
    const std::int32_t wanted = cell.requested_file[u];
    if (options.self_cache == SelfCachePolicy::local_hit &&
        cell.cached_file[u] == wanted) {
      // Served from the local cache: offloaded at zero radio energy.
      ++report.num_offloaded;
      matched.push_back(0.0);
      if (out_file_distances && wanted == options.collect_distances_for_file) {
        out_file_distances->push_back(0.0);
      }
      continue;
    }
    double best_sq = r_c_sq;
    bool found = false;
    grid.visit_neighborhood(cell.x_m[u], cell.y_m[u], [&](std::int32_t v) {
      if (static_cast<std::size_t>(v) == u) return;
      if (cell.cached_file[static_cast<std::size_t>(v)] != wanted) return;
      const double d_sq =
          squared_distance(cell.x_m[u], cell.y_m[u], cell.x_m[static_cast<std::size_t>(v)],
                           cell.y_m[static_cast<std::size_t>(v)], side, torus);
      if (d_sq <= best_sq) {
        best_sq = d_sq;
        found = true;
      }
    });
    if (!found) continue;  // served by the base station, no helper energy

    const double dist = std::sqrt(best_sq);
    ++report.num_offloaded;
    matched.push_back(dist);
    if (out_file_distances && wanted == options.collect_distances_for_file) {
      out_file_distances->push_back(dist);
    }

    double tx_power = radio.max_tx_power_w;
    double energy;
    if (options.power_policy == PowerPolicy::optimal && dist > 0.0) {
      const LinkEnergyResult link = solve_optimal_power(radio, demand, dist);
      tx_power = link.tx_power_w;
      energy = link.energy_joules;
    } else {
      energy = dist > 0.0 ? link_energy(radio, demand, radio.max_tx_power_w, dist) : 0.0;
    }
    energy_sum += energy;

    if (options.fading_diagnostic && dist > 0.0) {
      const double snr = tx_power * path_gain(radio, dist) / radio.noise_power_w;
      const double approx = std::log2(1.0 + snr);
      double acc = 0.0;
      for (int d = 0; d < options.fading_draws; ++d) {
        acc += std::log2(1.0 + snr * sample_exponential(fading_rng));
      }
      const double faded = acc / options.fading_draws;
      fading_err_sum += std::abs(faded - approx) / approx;
      ++fading_links;
    }
  }

  report.empirical_offloading_ratio =
      static_cast<double>(report.num_offloaded) / static_cast<double>(n);
  report.empirical_avg_energy_j = energy_sum / static_cast<double>(n);
  report.ci_halfwidth =
      binomial_halfwidth(report.empirical_offloading_ratio, report.num_requests);
  if (fading_links > 0)
    report.fading_rate_rel_err = fading_err_sum / static_cast<double>(fading_links);
  if (out_link_distances) {
    out_link_distances->insert(out_link_distances->end(), matched.begin(), matched.end());
  }
  report.link_distances = distance_stats(matched);
  return report;
}

SimReport run_campaign_with_caching(const DemandModel& demand, const NetworkConfig& net,
                                    const RadioConfig& radio,
                                    std::span<const double> caching,
                                    int num_realizations, std::uint64_t master_seed,
                                    const SimOptions& options,
                                    std::vector<double>* out_file_distances) {
  if (num_realizations < 1)
    throw ConfigError("run_campaign: num_realizations must be >= 1");

  struct Realization {
    SimReport report;
    std::vector<double> link_distances;
    std::vector<double> file_distances;
  };
  std::vector<Realization> slots(static_cast<std::size_t>(num_realizations));

  auto work = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      const std::uint64_t seed = derive_seed(master_seed, static_cast<std::uint64_t>(k));
      const CellRealization cell = sample_cell(demand, net, caching, seed);
      Realization& slot = slots[static_cast<std::size_t>(k)];
      slot.report = match_and_measure(cell, net, radio, demand, options,
                                      &slot.link_distances,
                                      out_file_distances ? &slot.file_distances : nullptr);
    }
  };

  int threads = options.threads;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, num_realizations);
  if (threads == 1) {
    work(0, num_realizations);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const int chunk = (num_realizations + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(num_realizations, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  // Ordered reduction: identical output for any thread count.
  SimReport total;
  total.realizations = num_realizations;
  std::vector<double> ratios;
  ratios.reserve(slots.size());
  std::vector<double> pooled;
  double energy_weighted = 0.0;
  double fading_weighted = 0.0;
  std::int64_t fading_basis = 0;
  for (Realization& slot : slots) {
    total.num_requests += slot.report.num_requests;
    total.num_offloaded += slot.report.num_offloaded;
    if (slot.report.num_requests > 0) {
      ratios.push_back(slot.report.empirical_offloading_ratio);
      energy_weighted += slot.report.empirical_avg_energy_j *
                         static_cast<double>(slot.report.num_requests);
      fading_weighted += slot.report.fading_rate_rel_err *
                         static_cast<double>(slot.report.num_offloaded);
      fading_basis += slot.report.num_offloaded;
    }
    pooled.insert(pooled.end(), slot.link_distances.begin(), slot.link_distances.end());
    if (out_file_distances) {
      out_file_distances->insert(out_file_distances->end(), slot.file_distances.begin(),
                                 slot.file_distances.end());
    }
  }
  if (total.num_requests > 0) {
    total.empirical_offloading_ratio =
        static_cast<double>(total.num_offloaded) / static_cast<double>(total.num_requests);
    total.empirical_avg_energy_j = energy_weighted / static_cast<double>(total.num_requests);
  }
  if (fading_basis > 0)
    total.fading_rate_rel_err = fading_weighted / static_cast<double>(fading_basis);

  if (ratios.size() > 1) {
    const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) /
                        static_cast<double>(ratios.size());
    double var = 0.0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    var /= static_cast<double>(ratios.size() - 1);
    total.ci_halfwidth = 1.96 * std::sqrt(var / static_cast<double>(ratios.size()));
  } else {
    total.ci_halfwidth =
        binomial_halfwidth(total.empirical_offloading_ratio, total.num_requests);
  }
  total.link_distances = distance_stats(pooled);
  return total;
}

SimReport run_campaign(const DemandModel& demand, const NetworkConfig& net,
                       const RadioConfig& radio, CachingPolicy caching_policy,
                       int num_realizations, std::uint64_t master_seed,
                       const SimOptions& options,
                       std::vector<double>* out_file_distances) {
  const std::vector<double> caching = caching_for_policy(caching_policy, demand, net);
  return run_campaign_with_caching(demand, net, radio, caching, num_realizations,
                                   master_seed, options, out_file_distances);
}

}  // namespace d2d
