// Command-line front end: mission runs, the sensor-configuration trade
// study, the reconstruction sweep, and artifact inspection.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uavsim/errors.hpp"
#include "uavsim/evals.hpp"
#include "uavsim/io.hpp"
#include "uavsim/mission.hpp"

namespace {

using namespace uavsim;

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir) {
  RunConfig config;
  if (config_path.empty()) {
    config = RunConfig::defaults(SensorConfiguration::kC, seed.value_or(0));
  } else {
    const std::filesystem::path p(config_path);
    config = RunConfig::from_json(read_file(p), p.parent_path());
  }
  if (seed.has_value()) config.seed = *seed;

  const RunArtifacts artifacts = run_mission(config);
  write_artifacts(artifacts, config, out_dir);
  write_file_atomic(std::filesystem::path(out_dir) / "flight_log.csv",
                    flight_log_csv(artifacts.trajectory));
  std::cout << artifacts.metrics.to_json() << "\n";
  return 0;
}

int cmd_eval_table1(int seeds, const std::string& configs_arg, const std::string& out) {
  std::vector<SensorConfiguration> configs;
  for (char c : configs_arg) {
    configs.push_back(configuration_from_string(std::string(1, c)));
  }
  std::vector<std::uint64_t> seed_list;
  for (int s = 0; s < seeds; ++s) seed_list.push_back(static_cast<std::uint64_t>(s));

  const Table1Result result = eval_table1(configs, seed_list);
  std::cout << result.csv;
  if (!out.empty()) write_file_atomic(out, result.csv);
  return 0;
}

int cmd_eval_recon(const std::string& distances_arg, int seeds, const std::string& config_arg,
                   const std::string& out) {
  std::vector<double> distances;
  std::string token;
  std::istringstream in(distances_arg);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) distances.push_back(std::stod(token));
  }
  std::vector<std::uint64_t> seed_list;
  for (int s = 0; s < seeds; ++s) seed_list.push_back(static_cast<std::uint64_t>(s));

  const auto rows = eval_reconstruction(configuration_from_string(config_arg), distances,
                                        seed_list);
  const std::string csv = reconstruction_csv(rows);
  std::cout << csv;
  if (!out.empty()) write_file_atomic(out, csv);
  return 0;
}

int cmd_flight_log(const std::string& run_dir) {
  const auto trajectory =
      parse_trajectory_csv(read_file(std::filesystem::path(run_dir) / "trajectory.csv"));
  const std::string csv = flight_log_csv(trajectory);
  write_file_atomic(std::filesystem::path(run_dir) / "flight_log.csv", csv);

  const FlightLogSummary summary = flight_log_summary(trajectory);
  nlohmann::ordered_json j;
  j["ticks"] = summary.ticks;
  auto axis_json = [](const AxisTracking& a) {
    return nlohmann::ordered_json{{"steady_ticks", a.steady_ticks},
                                  {"mean_error_rad", a.mean_error_rad},
                                  {"error_pct", a.error_pct}};
  };
  j["roll"] = axis_json(summary.roll);
  j["pitch"] = axis_json(summary.pitch);
  j["yaw"] = axis_json(summary.yaw);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_bus_stats(const std::string& run_dir) {
  std::cout << read_file(std::filesystem::path(run_dir) / "bus_stats.csv");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic indoor UAV SLAM simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", run_dir, table_out, recon_out;
  std::string configs_arg = "ABC", recon_config = "B";
  std::string distances_arg = "0.25,0.5,1,2,3,4,5,6";
  int seeds = 10, recon_seeds = 5;
  std::uint64_t seed_value = 0;
  bool seed_given = false;

  auto* run = app.add_subcommand("run", "Run one mission and write artifacts");
  run->add_option("--config", config_path, "Run-config JSON (omit for defaults)");
  run->add_option("--seed", seed_value, "Override the run seed")->each([&](const std::string&) {
    seed_given = true;
  });
  run->add_option("--out", out_dir, "Output directory")->required();

  auto* table = app.add_subcommand("eval-table1", "Sensor-configuration trade study");
  table->add_option("--seeds", seeds, "Number of seeds (>= 5)");
  table->add_option("--configs", configs_arg, "Subset of ABC");
  table->add_option("--out", table_out, "Also write the CSV here");

  auto* recon = app.add_subcommand("eval-recon", "Reconstruction vs distance sweep");
  recon->add_option("--distances", distances_arg, "Comma-separated distances in meters");
  recon->add_option("--seeds", recon_seeds, "Seeds to average");
  recon->add_option("--config", recon_config, "Sensor configuration");
  recon->add_option("--out", recon_out, "Also write the CSV here");

  auto* flight = app.add_subcommand("flight-log", "Desired-vs-actual RPY log and summary");
  flight->add_option("--run", run_dir, "Run directory")->required();

  auto* stats = app.add_subcommand("bus-stats", "Per-topic rate and bandwidth CSV");
  stats->add_option("--run", run_dir, "Run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(config_path,
                     seed_given ? std::optional<std::uint64_t>(seed_value) : std::nullopt,
                     out_dir);
    }
    if (table->parsed()) return cmd_eval_table1(seeds, configs_arg, table_out);
    if (recon->parsed()) return cmd_eval_recon(distances_arg, recon_seeds, recon_config, recon_out);
    if (flight->parsed()) return cmd_flight_log(run_dir);
    if (stats->parsed()) return cmd_bus_stats(run_dir);
  } catch (const uavsim::Error& e) {
    nlohmann::ordered_json err;
    err["category"] = uavsim::to_string(e.category());
    err["message"] = e.what();
    std::cerr << "error: " << err.dump() << "\n";
    return uavsim::exit_code(e.category());
  } catch (const std::exception& e) {
    nlohmann::ordered_json err;
    err["category"] = "internal";
    err["message"] = e.what();
    std::cerr << "error: " << err.dump() << "\n";
    return 1;
  }
  return 0;
}
