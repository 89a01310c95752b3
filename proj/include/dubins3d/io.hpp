#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dubins3d/planner.hpp"

namespace dubins3d {

/// Instance or manifest file problem; message carries field context.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A planning problem as described by an instance file. Angles live in the
/// file as degrees; everything here is already converted.
struct Instance {
  Configuration start;
  Configuration goal;
  VehicleParams params;
  PlannerConfig planner;
  // retained when the file specified the orientation as angles, so sweeps can
  // override the roll
  std::optional<EulerZYX> start_angles;
  std::optional<EulerZYX> goal_angles;
};

struct InstanceOverrides {
  std::optional<double> r_pitch, r_yaw, step;
  std::optional<int> theta_disc, phi_disc;
  std::optional<bool> refine;
  std::optional<double> roll_start_deg, roll_goal_deg;
};

Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);
Instance apply_overrides(Instance instance, const InstanceOverrides& overrides);

struct RunResult {
  Instance instance;
  PlanOutcome outcome;
  double wall_time_s = 0.0;
};

/// Plans the instance and measures wall time.
RunResult run_instance(const Instance& instance);

nlohmann::json result_to_json(const RunResult& result);
RunResult result_from_json(const nlohmann::json& j);

/// Header: s,x,y,z,tx,ty,tz,yx,yy,yz,ux,uy,uz,kg,kn
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& is);

struct BenchRow {
  std::string name;
  std::string status;  // "ok" or the failure reason
  double length = 0.0;
  std::string class_label;
  double time_s = 0.0;
};

/// Runs every manifest entry in order (with a warm-up plan before timing) and
/// returns one row per expanded run. Failures are recorded per row; the run
/// continues.
std::vector<BenchRow> run_benchmark(const nlohmann::json& manifest, const std::string& base_dir);

nlohmann::json bench_to_json(const std::vector<BenchRow>& rows);
void print_bench_table(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace dubins3d
