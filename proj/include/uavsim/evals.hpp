#pragma once

#include <map>
#include <string>
#include <vector>

#include "uavsim/mission.hpp"

namespace uavsim {

struct Table1Result {
  std::vector<SensorConfiguration> configs;
  std::map<char, std::vector<MetricsReport>> runs;  // per configuration letter
  std::map<char, MetricsReport> means;
  std::string csv;  // Table-1 row order, simulated beside reference columns
};

// Runs the sensor-configuration trade study: every config over every seed in
// the default world, reporting per-config means. Requires >= 5 seeds.
Table1Result eval_table1(const std::vector<SensorConfiguration>& configs,
                         const std::vector<std::uint64_t>& seeds);

struct ReconstructionRow {
  double distance_m = 0.0;
  double percent = 0.0;
  bool applicable = true;  // false when the wall sits outside the depth range
};

// Wall-target reconstruction sweep: a fronto-parallel wall at each distance,
// mapped from a fixed hover; percent = fraction of ground-truth surface
// samples within 1.5 * cell_size of a mapped-occupied cell, averaged over
// seeds. Distances outside the depth window yield not-applicable rows.
std::vector<ReconstructionRow> eval_reconstruction(SensorConfiguration config,
                                                   const std::vector<double>& distances,
                                                   const std::vector<std::uint64_t>& seeds);

std::string reconstruction_csv(const std::vector<ReconstructionRow>& rows);

struct AxisTracking {
  double mean_error_rad = 0.0;        // over quasi-steady ticks
  double error_pct = 0.0;             // normalized by the axis command scale
  int steady_ticks = 0;
};

struct FlightLogSummary {
  int ticks = 0;
  AxisTracking roll, pitch, yaw;
};

// Desired-vs-actual RPY per control tick.
std::string flight_log_csv(const std::vector<TrajectorySample>& trajectory);

// Steady-state tracking over the quasi-steady portions of a mission log.
FlightLogSummary flight_log_summary(const std::vector<TrajectorySample>& trajectory);

// Parses a trajectory.csv produced by write_artifacts.
std::vector<TrajectorySample> parse_trajectory_csv(const std::string& text);

struct StepResponse {
  double magnitude = 0.0;
  double steady_state_error_pct = 0.0;  // mean |error| over the final 2 s / step
  double overshoot_pct = 0.0;
  double settling_time_s = 0.0;         // into the 2 % band
  bool monotone = true;                 // |error| non-increasing after the step
  std::vector<double> time, desired, actual;
};

// Closed-loop attitude step response of controller + plant (no guidance).
// axis: 0 = roll, 1 = pitch, 2 = yaw.
StepResponse attitude_step_response(int axis, double magnitude, double duration = 10.0);

}  // namespace uavsim
