// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each check pins its tolerance in code; nothing is deferred
// to later calibration. Criterion 9 drives the CLI binary (path injected at
// build time via D2D_CLI_PATH).

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "d2d/analytics.hpp"
#include "d2d/caching.hpp"
#include "d2d/model.hpp"
#include "d2d/power.hpp"
#include "d2d/sim.hpp"
#include "d2d/units.hpp"
#include "test_support.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

d2d::NetworkConfig net_with_rc(double r_c, double side = 1000.0,
                               d2d::Topology topology = d2d::Topology::bounded_square) {
  d2d::NetworkConfig net;
  net.collaboration_distance_m = r_c;
  net.cell_side_m = side;
  net.topology = topology;
  return net;
}

// ---------------------------------------------------------------------------
// 1. Closed-form caching distribution vs projected-gradient oracle:
//    max-norm <= 1e-6 across the beta x r_c x N_f grid, under 60 s.
Outcome criterion_1() {
  const auto start = Clock::now();
  double worst = 0.0;
  std::string worst_point = "-";
  for (double beta : {0.0, 0.5, 1.0, 1.5}) {
    for (double r_c : {10.0, 30.0, 100.0}) {
      for (int n : {10, 100, 1000}) {
        const d2d::DemandModel demand{.catalog_size = n, .zipf_exponent = beta};
        const d2d::NetworkConfig net = net_with_rc(r_c);
        const auto closed = d2d::solve_optimal_caching(demand, net);
        const auto oracle = d2d::oracle_solve_caching(demand, net, 1e-9, 500000);
        double diff = 0.0;
        for (std::size_t i = 0; i < oracle.size(); ++i) {
          diff = std::max(diff, std::abs(oracle[i] - closed.probs[i]));
        }
        if (diff > worst) {
          worst = diff;
          worst_point = fmt("beta=%g r_c=%g N=%d", beta, r_c, n);
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = worst <= 1e-6 && elapsed < 60.0;
  out.detail = fmt("max|closed-oracle| = %.3g at %s (limit 1e-6), %.1f s (limit 60)",
                   worst, worst_point.c_str(), elapsed);
  return out;
}

// ---------------------------------------------------------------------------
// 2. Optimal transmit power vs 10,000-point grid search for r = 1..150 m,
//    plus the stationarity fixed point (y/e)^y = e^eps for interior roots.
Outcome criterion_2() {
  const auto start = Clock::now();
  const d2d::RadioConfig radio;
  const d2d::DemandModel demand;
  double worst_excess = 0.0;
  double worst_residual = 0.0;
  for (int r = 1; r <= 150; ++r) {
    const auto link = d2d::solve_optimal_power(radio, demand, r);
    const double grid_best =
        test_support::grid_search_min_energy(radio, demand, r, 10000);
    worst_excess = std::max(worst_excess, link.energy_joules / grid_best - 1.0);
    if (!link.at_max_power) {
      const double y =
          1.0 + link.tx_power_w * d2d::path_gain(radio, r) / radio.noise_power_w;
      const double residual = std::abs(y * std::log(y) - y - link.epsilon) /
                              std::max(1.0, std::abs(link.epsilon));
      worst_residual = std::max(worst_residual, residual);
    }
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = worst_excess <= 1e-9 && worst_residual <= 1e-9 && elapsed < 60.0;
  out.detail =
      fmt("max energy excess over grid = %.3g (limit 1e-9), max fixed-point "
          "residual = %.3g (limit 1e-9), %.1f s (limit 60)",
          worst_excess, worst_residual, elapsed);
  return out;
}

// ---------------------------------------------------------------------------
// 3. Headline: lambda=0.03, beta=1, N=1000, r_c=10 m, optimal caching
//    offloads more than 20% of traffic.
Outcome criterion_3() {
  const d2d::DemandModel demand;
  const d2d::NetworkConfig net = net_with_rc(10.0);
  const double ratio =
      d2d::offloading_ratio(demand, net, d2d::solve_optimal_caching(demand, net).probs);
  Outcome out;
  out.pass = ratio > 0.20;
  out.detail = fmt("offloading ratio = %.6f (required > 0.20)", ratio);
  return out;
}

// Shared helper for criteria 4-6: energy-cost ratio at the collaboration
// distance that reaches the target offloading ratio.
struct HeadlinePoint {
  double r_c = 0.0;
  double avg_energy = 0.0;
  double ratio = 0.0;            // energy-cost ratio per request
  double ratio_offloaded = 0.0;  // conditioned on offloading, for reference
};

HeadlinePoint headline_point(const d2d::DemandModel& demand,
                             const d2d::RadioConfig& radio, double target_offloading) {
  const d2d::BatteryConfig battery;
  HeadlinePoint point;
  point.r_c = d2d::collaboration_distance_for_offloading(
      demand, net_with_rc(100.0), d2d::CachingPolicy::optimal, target_offloading, 10.0,
      250.0);
  const d2d::NetworkConfig net = net_with_rc(point.r_c);
  const auto caching = d2d::solve_optimal_caching(demand, net).probs;
  d2d::EnergyAveragingOptions options;
  options.use_energy_cache = true;  // per the stated runtime budget
  point.avg_energy = d2d::average_energy(demand, net, radio, caching, options);
  point.ratio = d2d::energy_cost_ratio(point.avg_energy, battery);
  point.ratio_offloaded = point.ratio / target_offloading;
  return point;
}

// 4. Headline: optimal caching + optimal power at 80% offloading; energy-cost
//    ratio inside [1e-4, 4e-4].
Outcome criterion_4() {
  const auto start = Clock::now();
  const HeadlinePoint point = headline_point(d2d::DemandModel{}, d2d::RadioConfig{}, 0.8);
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = point.ratio >= 1e-4 && point.ratio <= 4e-4 && elapsed < 300.0;
  out.detail = fmt(
      "energy-cost ratio = %.4g at r_c = %.2f m (window [1e-4, 4e-4]; "
      "per-offloaded variant %.4g), %.1f s",
      point.ratio, point.r_c, point.ratio_offloaded, elapsed);
  return out;
}

// 5. Headline: noise floor raised to -70 dBm; ratio inside [0.5%, 2%] at 80%.
Outcome criterion_5() {
  const auto start = Clock::now();
  d2d::RadioConfig radio;
  radio.noise_power_w = d2d::units::dbm_to_watts(-70.0);
  const HeadlinePoint point = headline_point(d2d::DemandModel{}, radio, 0.8);
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = point.ratio >= 5e-3 && point.ratio <= 2e-2 && elapsed < 300.0;
  out.detail = fmt(
      "energy-cost ratio = %.4g at r_c = %.2f m (window [5e-3, 2e-2]; "
      "per-offloaded variant %.4g), %.1f s",
      point.ratio, point.r_c, point.ratio_offloaded, elapsed);
  return out;
}

// 6. Headline: at 80% offloading, average energy with beta=1 is 12.5%..50% of
//    the beta=0 value.
Outcome criterion_6() {
  const auto start = Clock::now();
  const d2d::RadioConfig radio;
  d2d::DemandModel skewed;  // beta = 1
  d2d::DemandModel flat = skewed;
  flat.zipf_exponent = 0.0;
  const HeadlinePoint with_skew = headline_point(skewed, radio, 0.8);
  const HeadlinePoint without_skew = headline_point(flat, radio, 0.8);
  const double ratio = with_skew.avg_energy / without_skew.avg_energy;
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = ratio >= 0.125 && ratio <= 0.5 && elapsed < 300.0;
  out.detail = fmt(
      "E(beta=1)/E(beta=0) = %.4f (window [0.125, 0.5]); r_c = %.1f vs %.1f m, "
      "%.1f s",
      ratio, with_skew.r_c, without_skew.r_c, elapsed);
  return out;
}

// ---------------------------------------------------------------------------
// 7. Monotonicity: offloading ratio and average energy both non-decreasing in
//    r_c over {10,...,200} m for beta in {0.5, 1}; slack 1e-12.
Outcome criterion_7() {
  const auto start = Clock::now();
  const d2d::RadioConfig radio;
  int violations = 0;
  std::string first_violation = "none";
  for (double beta : {0.5, 1.0}) {
    d2d::DemandModel demand;
    demand.zipf_exponent = beta;
    double previous_ratio = -1.0;
    double previous_energy = -1.0;
    for (double r_c = 10.0; r_c <= 200.0; r_c += 10.0) {
      const d2d::NetworkConfig net = net_with_rc(r_c);
      const auto caching = d2d::solve_optimal_caching(demand, net).probs;
      const double ratio = d2d::offloading_ratio(demand, net, caching);
      const double energy = d2d::average_energy(demand, net, radio, caching);
      if (ratio < previous_ratio - 1e-12 ||
          energy < previous_energy - 1e-12 * std::max(1.0, previous_energy)) {
        ++violations;
        if (violations == 1) first_violation = fmt("beta=%g r_c=%g", beta, r_c);
      }
      previous_ratio = ratio;
      previous_energy = energy;
    }
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = violations == 0;
  out.detail = fmt("monotonicity violations = %d (first at %s), 40 points, %.1f s",
                   violations, first_violation.c_str(), elapsed);
  return out;
}

// ---------------------------------------------------------------------------
// 8. Monte Carlo vs analytic on a torus (300 m cell): offloading ratio within
//    3 CI half-widths at r_c in {10, 30, 50}; nearest-helper distances pass a
//    1%-significance KS test against the truncated Rayleigh law on >= 1e5
//    samples.
Outcome criterion_8() {
  const auto start = Clock::now();
  const d2d::DemandModel demand;
  const d2d::RadioConfig radio;
  std::string ratio_detail;
  bool ratios_ok = true;
  for (double r_c : {10.0, 30.0, 50.0}) {
    const d2d::NetworkConfig net = net_with_rc(r_c, 300.0, d2d::Topology::torus);
    const auto caching = d2d::solve_optimal_caching(demand, net).probs;
    const double analytic = d2d::offloading_ratio(demand, net, caching);
    d2d::SimOptions options;
    options.threads = 0;  // hardware concurrency
    const d2d::SimReport report = d2d::run_campaign_with_caching(
        demand, net, radio, caching, 60, 0xACCE55ull, options);
    const double gap = std::abs(report.empirical_offloading_ratio - analytic);
    if (gap > 3.0 * report.ci_halfwidth) ratios_ok = false;
    ratio_detail +=
        fmt("r_c=%g:|emp-ana|=%.2g/3CI=%.2g ", r_c, gap, 3.0 * report.ci_halfwidth);
  }

  // KS sample collection: file-1 link distances at r_c = 50 m.
  const d2d::NetworkConfig net = net_with_rc(50.0, 300.0, d2d::Topology::torus);
  const auto caching = d2d::solve_optimal_caching(demand, net).probs;
  d2d::SimOptions collect;
  collect.threads = 0;
  collect.collect_distances_for_file = 1;
  std::vector<double> distances;
  d2d::run_campaign_with_caching(demand, net, radio, caching, 300, 0x5EEDBA11ull,
                                 collect, &distances);
  std::sort(distances.begin(), distances.end());
  const double density = net.user_density * caching[0] * d2d::kPi;
  const double r_c = net.collaboration_distance_m;
  const double truncated_mass = 1.0 - std::exp(-density * r_c * r_c);
  const double ks = test_support::ks_statistic(distances, [&](double r) {
    return (1.0 - std::exp(-density * r * r)) / truncated_mass;
  });
  const double ks_limit = test_support::ks_critical_1pct(distances.size());
  const double elapsed = seconds_since(start);

  Outcome out;
  out.pass =
      ratios_ok && distances.size() >= 100000 && ks < ks_limit && elapsed < 600.0;
  out.detail = fmt("%sKS D=%.4g (limit %.4g, n=%zu), %.1f s (limit 600)",
                   ratio_detail.c_str(), ks, ks_limit, distances.size(), elapsed);
  return out;
}

// ---------------------------------------------------------------------------
// 9. Determinism: identical config + seed give byte-identical CSV output,
//    independent of thread count, for the Monte Carlo and sweep subcommands.
Outcome criterion_9() {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("d2d_acceptance_" + std::to_string(getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);

  const std::string base_config =
      "demand.catalog_size = 80\n"
      "net.cell_side_m = 250\n"
      "net.topology = torus\n"
      "sweep.axis = r_c\n"
      "sweep.values = 12, 25, 40\n"
      "mc.realizations = 10\n";
  const std::string cfg_serial = (dir / "serial.cfg").string();
  const std::string cfg_parallel = (dir / "parallel.cfg").string();
  test_support::write_file(cfg_serial, base_config + "mc.threads = 1\n");
  test_support::write_file(cfg_parallel, base_config + "mc.threads = 4\n");

  auto run = [&](const std::string& sub, const std::string& cfg, const std::string& tag) {
    const std::string out_dir = (dir / tag).string();
    const std::string command = std::string(D2D_CLI_PATH) + " " + sub + " --config " +
                                cfg + " --seed 77 --out " + out_dir +
                                " >/dev/null 2>/dev/null";
    if (test_support::run_process(command) != 0) return std::string();
    const std::string file = sub == "cache-dist" ? "cache_dist.csv" : sub + ".csv";
    return test_support::read_file(out_dir + "/" + file);
  };

  const std::string sim_a = run("simulate", cfg_serial, "sim_a");
  const std::string sim_b = run("simulate", cfg_serial, "sim_b");
  const std::string sim_c = run("simulate", cfg_parallel, "sim_c");
  const std::string trade_a = run("tradeoff", cfg_serial, "trade_a");
  const std::string trade_b = run("tradeoff", cfg_serial, "trade_b");
  const std::string cache_a = run("cache-dist", cfg_serial, "cache_a");
  const std::string cache_b = run("cache-dist", cfg_serial, "cache_b");
  fs::remove_all(dir);

  Outcome out;
  const bool nonempty = !sim_a.empty() && !trade_a.empty() && !cache_a.empty();
  const bool identical =
      sim_a == sim_b && sim_a == sim_c && trade_a == trade_b && cache_a == cache_b;
  out.pass = nonempty && identical;
  out.detail = fmt(
      "simulate rerun %s, simulate 1-vs-4 threads %s, tradeoff rerun %s, "
      "cache-dist rerun %s",
      sim_a == sim_b && nonempty ? "identical" : "DIFFERS",
      sim_a == sim_c && nonempty ? "identical" : "DIFFERS",
      trade_a == trade_b && nonempty ? "identical" : "DIFFERS",
      cache_a == cache_b && nonempty ? "identical" : "DIFFERS");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "closed-form caching vs projected-gradient oracle", criterion_1},
      {2, "optimal power vs exhaustive grid + fixed point", criterion_2},
      {3, "offloading > 20% at r_c = 10 m", criterion_3},
      {4, "energy-cost ratio at 80% offloading (optimal/optimal)", criterion_4},
      {5, "energy-cost ratio at 80% offloading, -70 dBm noise", criterion_5},
      {6, "beta=1 vs beta=0 energy ratio at 80% offloading", criterion_6},
      {7, "offloading and energy monotone in collaboration distance", criterion_7},
      {8, "Monte Carlo offloading + link-distance law vs analytics", criterion_8},
      {9, "byte-identical reruns, serial and parallel", criterion_9},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    if (!outcome.pass) ++failures;
    std::printf("[%s] criterion %d: %s — %s\n", outcome.pass ? "PASS" : "FAIL",
                criterion.id, criterion.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu acceptance criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
