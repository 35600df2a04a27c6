#include <doctest.h>

#include <cmath>
#include <vector>

#include "d2d/analytics.hpp"
#include "d2d/errors.hpp"
#include "d2d/quadrature.hpp"
#include "d2d/rng.hpp"
#include "test_support.hpp"

using namespace d2d;

namespace {

NetworkConfig net_with_rc(double r_c) {
  NetworkConfig net;
  net.collaboration_distance_m = r_c;
  return net;
}

}  // namespace

TEST_CASE("link distance pdf") {
  const NetworkConfig net;  // lambda = 0.03
  SUBCASE("vanishes at r = 0") { CHECK(link_distance_pdf(net, 0.2, 0.0) == 0.0); }

  SUBCASE("normalizes to 1 over the half line") {
    for (double p : {0.001, 0.05, 0.5}) {
      const double scale = 1.0 / std::sqrt(net.user_density * p * kPi);
      const double mass = test_support::simpson(
          [&](double r) { return link_distance_pdf(net, p, r); }, 0.0, 12.0 * scale,
          200000);
      CHECK(std::abs(mass - 1.0) <= 1e-10);
    }
  }

  SUBCASE("truncated mass equals the hit probability") {
    const double p = 0.01;
    for (double r_c : {5.0, 20.0, 80.0}) {
      const double mass = test_support::simpson(
          [&](double r) { return link_distance_pdf(net, p, r); }, 0.0, r_c, 200000);
      const double hit = 1.0 - std::exp(-net.user_density * p * kPi * r_c * r_c);
      CHECK(std::abs(mass - hit) <= 1e-10);
    }
  }
}

TEST_CASE("average energy: basic behavior") {
  const DemandModel demand;
  const RadioConfig radio;

  SUBCASE("vanishing collaboration distance") {
    NetworkConfig net = net_with_rc(1e-3);
    const auto caching = uniform_caching(demand.catalog_size);
    CHECK(average_energy(demand, net, radio, caching) <= 1e-9);
  }

  SUBCASE("optimal power never averages above max power") {
    NetworkConfig net = net_with_rc(50.0);
    const auto caching = solve_optimal_caching(demand, net).probs;
    EnergyAveragingOptions optimal;
    EnergyAveragingOptions max_power;
    max_power.power_policy = PowerPolicy::max_power;
    CHECK(average_energy(demand, net, radio, caching, optimal) <=
          average_energy(demand, net, radio, caching, max_power));
  }

  SUBCASE("caching vector length is checked") {
    NetworkConfig net = net_with_rc(50.0);
    CHECK_THROWS_AS(average_energy(demand, net, radio, uniform_caching(3)), ConfigError);
  }
}

TEST_CASE("average energy: cached interpolation agrees with exact root-finds") {
  const DemandModel demand;
  const RadioConfig radio;
  NetworkConfig net = net_with_rc(30.0);
  const auto caching = solve_optimal_caching(demand, net).probs;

  EnergyAveragingOptions cached;
  cached.use_energy_cache = true;
  EnergyAveragingOptions exact;
  const double with_cache = average_energy(demand, net, radio, caching, cached);
  const double without_cache = average_energy(demand, net, radio, caching, exact);
  CHECK(std::abs(with_cache - without_cache) <= 1e-4 * without_cache);
}

TEST_CASE("average energy: Monte Carlo sampling of the link-distance law agrees") {
  const DemandModel demand{.catalog_size = 50, .zipf_exponent = 1.0};
  const RadioConfig radio;
  NetworkConfig net = net_with_rc(60.0);
  const auto caching = solve_optimal_caching(demand, net).probs;
  const auto request = request_probabilities(demand);

  const double quadrature_value = average_energy(demand, net, radio, caching);

  // Draw (file, distance) from the analytic law; energy is zero when the
  // nearest helper falls outside the collaboration distance.
  const OptimalEnergyTable table(radio, demand, net.collaboration_distance_m, 0.05);
  SplitMix64 rng(0xE17u);
  const DiscreteSampler file_sampler(request);
  const int samples = 1000000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int file = file_sampler.sample(rng);
    const double p = caching[static_cast<std::size_t>(file)];
    double value = 0.0;
    if (p > 0.0) {
      const double u = sample_exponential(rng);
      const double r = std::sqrt(u / (net.user_density * p * kPi));
      if (r <= net.collaboration_distance_m) value = table.energy(r);
    }
    sum += value;
    sum_sq += value * value;
  }
  const double mean = sum / samples;
  const double variance = (sum_sq / samples - mean * mean) / (samples - 1);
  const double standard_error = std::sqrt(std::max(variance, 0.0));
  CHECK(std::abs(mean - quadrature_value) <= 3.0 * standard_error);
}

TEST_CASE("energy cost ratio") {
  const BatteryConfig battery;
  CHECK(energy_cost_ratio(0.0, battery) == 0.0);
  CHECK(energy_cost_ratio(25.92, battery) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK_THROWS_AS(energy_cost_ratio(-1.0, battery), std::domain_error);

  SUBCASE("scales inversely with capacity and voltage") {
    BatteryConfig doubled = battery;
    doubled.capacity_mah *= 2.0;
    CHECK(energy_cost_ratio(10.0, doubled) ==
          doctest::Approx(0.5 * energy_cost_ratio(10.0, battery)).epsilon(1e-14));
    BatteryConfig boosted = battery;
    boosted.voltage_v *= 4.0;
    CHECK(energy_cost_ratio(10.0, boosted) ==
          doctest::Approx(0.25 * energy_cost_ratio(10.0, battery)).epsilon(1e-14));
  }
}

TEST_CASE("tradeoff curve: monotone columns and policy dominance") {
  const DemandModel demand;
  const RadioConfig radio;
  const BatteryConfig battery;
  const NetworkConfig net;
  std::vector<double> grid;
  for (double r = 10.0; r <= 100.0; r += 10.0) grid.push_back(r);

  const auto optimal = tradeoff_curve(demand, net, grid, radio, battery,
                                      CachingPolicy::optimal, PowerPolicy::optimal);
  const auto uniform = tradeoff_curve(demand, net, grid, radio, battery,
                                      CachingPolicy::uniform, PowerPolicy::optimal);
  REQUIRE(optimal.size() == grid.size());
  REQUIRE(uniform.size() == grid.size());

  for (std::size_t i = 0; i < optimal.size(); ++i) {
    if (i > 0) {
      CHECK(optimal[i].offloading_ratio >= optimal[i - 1].offloading_ratio - 1e-12);
      CHECK(optimal[i].avg_energy_j >= optimal[i - 1].avg_energy_j - 1e-12);
    }
    CHECK(optimal[i].offloading_ratio >= uniform[i].offloading_ratio - 1e-12);
    CHECK(optimal[i].energy_cost_ratio ==
          doctest::Approx(optimal[i].avg_energy_j / battery.energy_joules())
              .epsilon(1e-12));
    CHECK(optimal[i].avg_energy_per_offloaded_j ==
          doctest::Approx(optimal[i].avg_energy_j / optimal[i].offloading_ratio)
              .epsilon(1e-12));
  }

  SUBCASE("grid must be increasing and non-empty") {
    CHECK_THROWS_AS(tradeoff_curve(demand, net, std::vector<double>{}, radio, battery,
                                   CachingPolicy::optimal, PowerPolicy::optimal),
                    ConfigError);
    CHECK_THROWS_AS(tradeoff_curve(demand, net, std::vector<double>{20.0, 10.0}, radio,
                                   battery, CachingPolicy::optimal, PowerPolicy::optimal),
                    ConfigError);
  }
}

TEST_CASE("collaboration distance for a target offloading ratio") {
  const DemandModel demand;
  const NetworkConfig net;
  const double r80 = collaboration_distance_for_offloading(
      demand, net, CachingPolicy::optimal, 0.8, 10.0, 200.0);
  NetworkConfig at = net;
  at.collaboration_distance_m = r80;
  const double achieved =
      offloading_ratio(demand, at, solve_optimal_caching(demand, at).probs);
  CHECK(achieved == doctest::Approx(0.8).epsilon(1e-6));
  CHECK(r80 > 70.0);
  CHECK(r80 < 90.0);

  CHECK_THROWS_AS(collaboration_distance_for_offloading(demand, net,
                                                        CachingPolicy::optimal, 0.999,
                                                        10.0, 20.0),
                  SolverError);
}

TEST_CASE("adaptive quadrature reports the offending subinterval") {
  // A saturating panel budget must fail loudly, carrying the subinterval.
  int calls = 0;
  auto nasty = [&calls](double x) {
    ++calls;
    return std::sin(1.0 / (x + 1e-12));
  };
  bool threw = false;
  try {
    integrate_adaptive(nasty, 0.0, 1.0, 1e-14, 16);
  } catch (const QuadratureError& e) {
    threw = true;
    CHECK(e.interval_begin() >= 0.0);
    CHECK(e.interval_end() <= 1.0);
    CHECK(e.interval_begin() < e.interval_end());
  }
  CHECK(threw);
}
