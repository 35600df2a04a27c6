#include "d2d/commands.hpp"

#include <cmath>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "d2d/analytics.hpp"
#include "d2d/caching.hpp"
#include "d2d/csv.hpp"
#include "d2d/errors.hpp"
#include "d2d/power.hpp"
#include "d2d/sim.hpp"
#include "d2d/units.hpp"

namespace d2d::cli {

namespace {

std::vector<double> linear_grid(double first, double last, double step) {
  std::vector<double> grid;
  for (double v = first; v <= last + 1e-9; v += step) grid.push_back(v);
  return grid;
}

std::vector<double> sweep_values_or(const ExperimentConfig& config,
                                    const std::string& axis,
                                    std::vector<double> fallback,
                                    const std::string& command) {
  if (config.sweep.axis != "none" && config.sweep.axis != axis) {
    throw ConfigError(command + ": sweep.axis must be '" + axis + "' or 'none', got '" +
                      config.sweep.axis + "'");
  }
  if (config.sweep.axis == axis && !config.sweep.values.empty()) {
    return config.sweep.values;
  }
  return fallback;
}

std::string plot_value_tag(double v) {
  std::string tag = csv::format_double(v);
  for (char& c : tag) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return tag;
}

std::string two_column(const std::vector<std::pair<double, double>>& points) {
  std::string out;
  for (const auto& [x, y] : points) {
    out += csv::format_double(x);
    out += ' ';
    out += csv::format_double(y);
    out += '\n';
  }
  return out;
}

// cache-dist over one sweep axis (beta, lambda or r_c; none = single block).
std::string cache_dist_csv(const ExperimentConfig& config, bool plot_data,
                           CommandOutput& output, const std::string& stem) {
  const std::string axis = config.sweep.axis == "none" ? "r_c" : config.sweep.axis;
  if (axis != "beta" && axis != "lambda" && axis != "r_c") {
    throw ConfigError("cache-dist: sweep.axis must be beta, lambda or r_c");
  }
  std::vector<double> values = config.sweep.values;
  if (config.sweep.axis == "none" || values.empty()) {
    values = {axis == "beta"     ? config.demand.zipf_exponent
              : axis == "lambda" ? config.net.user_density
                                 : config.net.collaboration_distance_m};
  }

  csv::Builder table({"file_index", "p_c", "beta", "lambda", "r_c", "i_star"});
  for (double value : values) {
    DemandModel demand = config.demand;
    NetworkConfig net = config.net;
    if (axis == "beta") demand.zipf_exponent = value;
    if (axis == "lambda") net.user_density = value;
    if (axis == "r_c") net.collaboration_distance_m = value;
    const CachingDistribution dist = solve_optimal_caching(demand, net);
    for (int i = 1; i <= demand.catalog_size; ++i) {
      table.add(i)
          .add(dist.probs[static_cast<std::size_t>(i - 1)])
          .add(demand.zipf_exponent)
          .add(net.user_density)
          .add(net.collaboration_distance_m)
          .add(dist.support_index);
      table.end_row();
    }
    if (plot_data) {
      std::vector<std::pair<double, double>> points;
      points.reserve(dist.probs.size());
      for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        points.emplace_back(static_cast<double>(i + 1), dist.probs[i]);
      }
      output.files.emplace_back(stem + "_" + axis + plot_value_tag(value) + ".dat",
                                two_column(points));
    }
  }
  return table.str();
}

std::string power_csv(const ExperimentConfig& config, bool plot_data,
                      CommandOutput& output, const std::string& stem) {
  const std::vector<double> grid =
      sweep_values_or(config, "r", linear_grid(1.0, 150.0, 1.0), "power");
  csv::Builder table({"r_m", "p_star_w", "p_star_dbm", "energy_j", "at_max_power"});
  std::vector<std::pair<double, double>> power_curve;
  std::vector<std::pair<double, double>> energy_curve;
  for (double r : grid) {
    const LinkEnergyResult link = solve_optimal_power(config.radio, config.demand, r);
    table.add(r)
        .add(link.tx_power_w)
        .add(units::watts_to_dbm(link.tx_power_w))
        .add(link.energy_joules)
        .add(link.at_max_power);
    table.end_row();
    if (plot_data) {
      power_curve.emplace_back(r, units::watts_to_dbm(link.tx_power_w));
      energy_curve.emplace_back(r, link.energy_joules);
    }
  }
  if (plot_data) {
    output.files.emplace_back(stem + "_pstar_dbm.dat", two_column(power_curve));
    output.files.emplace_back(stem + "_energy.dat", two_column(energy_curve));
  }
  return table.str();
}

std::string tradeoff_csv(const ExperimentConfig& config, bool plot_data,
                         CommandOutput& output, const std::string& stem) {
  const std::vector<double> grid =
      sweep_values_or(config, "r_c", linear_grid(10.0, 100.0, 5.0), "tradeoff");
  csv::Builder table({"r_c_m", "caching_policy", "power_policy", "offloading_ratio",
                      "avg_energy_j", "avg_energy_per_offloaded_j",
                      "energy_cost_ratio"});
  static constexpr std::pair<CachingPolicy, PowerPolicy> kPairs[] = {
      {CachingPolicy::optimal, PowerPolicy::optimal},
      {CachingPolicy::optimal, PowerPolicy::max_power},
      {CachingPolicy::uniform, PowerPolicy::optimal},
      {CachingPolicy::uniform, PowerPolicy::max_power},
  };
  for (const auto& [caching_policy, power_policy] : kPairs) {
    const std::vector<TradeoffPoint> curve =
        tradeoff_curve(config.demand, config.net, grid, config.radio, config.battery,
                       caching_policy, power_policy);
    std::vector<std::pair<double, double>> points;
    for (const TradeoffPoint& p : curve) {
      table.add(p.r_c_m)
          .add(to_string(p.caching_policy))
          .add(to_string(p.power_policy))
          .add(p.offloading_ratio)
          .add(p.avg_energy_j)
          .add(p.avg_energy_per_offloaded_j)
          .add(p.energy_cost_ratio);
      table.end_row();
      points.emplace_back(p.offloading_ratio, p.energy_cost_ratio);
    }
    if (plot_data) {
      output.files.emplace_back(stem + "_" + to_string(caching_policy) + "_caching_" +
                                    to_string(power_policy) + "_power.dat",
                                two_column(points));
    }
  }
  return table.str();
}

std::string simulate_csv(const ExperimentConfig& config, bool plot_data,
                         CommandOutput& output, const std::string& stem) {
  const std::vector<double> grid = sweep_values_or(config, "r_c", {10.0, 30.0, 50.0}, "simulate");
  csv::Builder table(
      {"r_c_m", "caching_policy", "power_policy", "topology", "realizations",
       "master_seed", "num_requests", "num_offloaded", "empirical_offloading_ratio",
       "analytic_offloading_ratio", "ci_halfwidth", "empirical_avg_energy_j",
       "analytic_avg_energy_j", "mean_link_m", "p50_link_m", "p90_link_m",
       "fading_rate_rel_err"});
  SimOptions options;
  options.power_policy = config.policy.power;
  options.self_cache = config.mc.self_cache;
  options.fading_diagnostic = config.mc.fading_diag;
  options.fading_draws = config.mc.fading_draws;
  options.threads = config.mc.threads;

  std::vector<std::pair<double, double>> empirical_curve;
  std::vector<std::pair<double, double>> analytic_curve;
  for (double r_c : grid) {
    NetworkConfig net = config.net;
    net.collaboration_distance_m = r_c;
    const std::vector<double> caching =
        caching_for_policy(config.policy.caching, config.demand, net);
    const double analytic_ratio = offloading_ratio(config.demand, net, caching);
    EnergyAveragingOptions energy_options;
    energy_options.power_policy = config.policy.power;
    const double analytic_energy =
        average_energy(config.demand, net, config.radio, caching, energy_options);
    const SimReport report =
        run_campaign_with_caching(config.demand, net, config.radio, caching,
                                  config.mc.realizations, config.mc.master_seed, options);
    table.add(r_c)
        .add(to_string(config.policy.caching))
        .add(to_string(config.policy.power))
        .add(to_string(net.topology))
        .add(report.realizations)
        .add(std::to_string(config.mc.master_seed))
        .add(report.num_requests)
        .add(report.num_offloaded)
        .add(report.empirical_offloading_ratio)
        .add(analytic_ratio)
        .add(report.ci_halfwidth)
        .add(report.empirical_avg_energy_j)
        .add(analytic_energy)
        .add(report.link_distances.mean_m)
        .add(report.link_distances.p50_m)
        .add(report.link_distances.p90_m)
        .add(report.fading_rate_rel_err);
    table.end_row();
    empirical_curve.emplace_back(r_c, report.empirical_offloading_ratio);
    analytic_curve.emplace_back(r_c, analytic_ratio);
  }
  if (plot_data) {
    output.files.emplace_back(stem + "_empirical.dat", two_column(empirical_curve));
    output.files.emplace_back(stem + "_analytic.dat", two_column(analytic_curve));
  }
  return table.str();
}

}  // namespace

CommandOutput cmd_cache_dist(const ExperimentConfig& config, bool plot_data) {
  config.validate();
  CommandOutput output;
  output.files.emplace_back("cache_dist.csv",
                            cache_dist_csv(config, plot_data, output, "cache_dist"));
  return output;
}

CommandOutput cmd_power(const ExperimentConfig& config, bool plot_data) {
  config.validate();
  CommandOutput output;
  output.files.emplace_back("power.csv", power_csv(config, plot_data, output, "power"));
  return output;
}

CommandOutput cmd_tradeoff(const ExperimentConfig& config, bool plot_data) {
  config.validate();
  CommandOutput output;
  output.files.emplace_back("tradeoff.csv",
                            tradeoff_csv(config, plot_data, output, "tradeoff"));
  return output;
}

CommandOutput cmd_simulate(const ExperimentConfig& config, bool plot_data) {
  config.validate();
  CommandOutput output;
  output.files.emplace_back("simulate.csv",
                            simulate_csv(config, plot_data, output, "simulate"));
  return output;
}

CommandOutput cmd_figures(const ExperimentConfig& config, bool plot_data) {
  config.validate();
  CommandOutput output;

  // fig3a: optimal caching distribution, beta and lambda variations at r_c = 100.
  {
    ExperimentConfig fig = config;
    fig.net.collaboration_distance_m = 100.0;
    fig.sweep.axis = "beta";
    fig.sweep.values = {0.5, 1.0, 1.5};
    output.files.emplace_back("fig3a_beta.csv",
                              cache_dist_csv(fig, plot_data, output, "fig3a_beta"));
    fig.sweep.axis = "lambda";
    fig.sweep.values = {0.01, 0.05};
    output.files.emplace_back("fig3a_lambda.csv",
                              cache_dist_csv(fig, plot_data, output, "fig3a_lambda"));
  }

  // fig3b: optimal transmit power / energy vs link distance (up to 300 m to
  // show where the power cap becomes active).
  {
    ExperimentConfig fig = config;
    fig.sweep.axis = "r";
    fig.sweep.values = linear_grid(1.0, 300.0, 1.0);
    output.files.emplace_back("fig3b.csv", power_csv(fig, plot_data, output, "fig3b"));
  }

  // fig4: offloading ratio and energy vs r_c for all policy pairs.
  {
    ExperimentConfig fig = config;
    fig.sweep.axis = "r_c";
    fig.sweep.values = linear_grid(10.0, 200.0, 10.0);
    output.files.emplace_back("fig4.csv", tradeoff_csv(fig, plot_data, output, "fig4"));
  }

  // fig5: offloading ratio and energy-cost ratio vs beta for several user
  // densities at r_c = 100.
  {
    csv::Builder table({"beta", "lambda", "offloading_ratio", "avg_energy_j",
                        "energy_cost_ratio"});
    for (double lambda : {0.01, 0.03, 0.05}) {
      for (double beta : linear_grid(0.0, 2.0, 0.25)) {
        DemandModel demand = config.demand;
        demand.zipf_exponent = beta;
        NetworkConfig net = config.net;
        net.user_density = lambda;
        net.collaboration_distance_m = 100.0;
        const std::vector<double> caching =
            caching_for_policy(CachingPolicy::optimal, demand, net);
        const double ratio = offloading_ratio(demand, net, caching);
        const double energy = average_energy(demand, net, config.radio, caching);
        table.add(beta)
            .add(lambda)
            .add(ratio)
            .add(energy)
            .add(energy_cost_ratio(energy, config.battery));
        table.end_row();
      }
    }
    output.files.emplace_back("fig5.csv", table.str());
  }

  // fig6a: the base tradeoff (all four policy pairs, r_c 10..100).
  {
    ExperimentConfig fig = config;
    fig.sweep.axis = "r_c";
    fig.sweep.values = linear_grid(10.0, 100.0, 5.0);
    output.files.emplace_back("fig6a.csv", tradeoff_csv(fig, plot_data, output, "fig6a"));
  }

  // fig6b/c/d: optimal/optimal tradeoff under noise, density and popularity
  // variations.
  {
    csv::Builder table({"variant", "value", "r_c_m", "offloading_ratio", "avg_energy_j",
                        "energy_cost_ratio"});
    auto emit_curve = [&](const std::string& variant, double value,
                          const DemandModel& demand, const NetworkConfig& net,
                          const RadioConfig& radio) {
      for (double r_c : linear_grid(10.0, 200.0, 10.0)) {
        NetworkConfig point_net = net;
        point_net.collaboration_distance_m = r_c;
        const std::vector<double> caching =
            caching_for_policy(CachingPolicy::optimal, demand, point_net);
        const double ratio = offloading_ratio(demand, point_net, caching);
        const double energy = average_energy(demand, point_net, radio, caching);
        table.add(variant)
            .add(value)
            .add(r_c)
            .add(ratio)
            .add(energy)
            .add(energy_cost_ratio(energy, config.battery));
        table.end_row();
      }
    };
    for (double noise_dbm : {-95.0, -85.0, -70.0}) {
      RadioConfig radio = config.radio;
      radio.noise_power_w = units::dbm_to_watts(noise_dbm);
      emit_curve("noise_dbm", noise_dbm, config.demand, config.net, radio);
    }
    for (double lambda : {0.01, 0.03, 0.05}) {
      NetworkConfig net = config.net;
      net.user_density = lambda;
      emit_curve("lambda", lambda, config.demand, net, config.radio);
    }
    for (double beta : {0.0, 0.5, 1.0}) {
      DemandModel demand = config.demand;
      demand.zipf_exponent = beta;
      emit_curve("beta", beta, demand, config.net, config.radio);
    }
    output.files.emplace_back("fig6bcd.csv", table.str());
  }

  return output;
}

std::vector<std::string> write_outputs(const std::string& out_dir,
                                       const CommandOutput& output) {
  std::vector<std::string> written;
  for (const auto& [name, content] : output.files) {
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    csv::write_file(path, content);
    written.push_back(path);
  }
  return written;
}

}  // namespace d2d::cli
