#include "dubins3d/io.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace dubins3d {

namespace {

constexpr double kDegToRad = kPi / 180.0;

double require_number(const nlohmann::json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  if (!j.at(key).is_number()) throw ParseError(where + ": field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

Vec3 vec3_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ParseError(where + ": expected an array of 3 numbers");
  for (const auto& v : j)
    if (!v.is_number()) throw ParseError(where + ": expected an array of 3 numbers");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Configuration config_from_json(const nlohmann::json& j, const std::string& where,
                               std::optional<EulerZYX>* angles_out) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  Configuration config;
  config.position = vec3_from_json(j.contains("position") ? j.at("position") : nlohmann::json(),
                                   where + ".position");
  bool has_angles = j.contains("yaw_deg") || j.contains("pitch_deg") || j.contains("roll_deg");
  bool has_frame = j.contains("frame");
  if (has_angles == has_frame)
    throw ParseError(where + ": orientation must be yaw/pitch/roll degrees or an explicit frame");
  if (has_angles) {
    EulerZYX e{require_number(j, "yaw_deg", where) * kDegToRad,
               require_number(j, "pitch_deg", where) * kDegToRad,
               require_number(j, "roll_deg", where) * kDegToRad};
    config.frame = euler_to_frame(e);
    *angles_out = e;
  } else {
    const auto& f = j.at("frame");
    if (!f.is_object()) throw ParseError(where + ".frame: expected an object with t, y, u");
    Mat3 m;
    m.col(0) = vec3_from_json(f.contains("t") ? f.at("t") : nlohmann::json(), where + ".frame.t");
    m.col(1) = vec3_from_json(f.contains("y") ? f.at("y") : nlohmann::json(), where + ".frame.y");
    m.col(2) = vec3_from_json(f.contains("u") ? f.at("u") : nlohmann::json(), where + ".frame.u");
    if (orthonormality_error(m) > 1e-6 || m.determinant() < 0.0)
      throw ParseError(where + ".frame: not a right-handed orthonormal frame");
    config.frame = project_to_rotation(m);
    *angles_out = std::nullopt;
  }
  return config;
}

nlohmann::json config_to_json(const Configuration& c) {
  auto vec = [](const Vec3& v) { return nlohmann::json::array({v.x(), v.y(), v.z()}); };
  return {{"position", vec(c.position)},
          {"frame", {{"t", vec(c.tangent())}, {"y", vec(c.lateral())}, {"u", vec(c.normal())}}}};
}

Configuration config_from_result_json(const nlohmann::json& j, const std::string& where) {
  std::optional<EulerZYX> unused;
  return config_from_json(j, where, &unused);
}

}  // namespace

Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  Instance inst;
  if (!j.contains("initial")) throw ParseError("instance: missing field 'initial'");
  if (!j.contains("final")) throw ParseError("instance: missing field 'final'");
  inst.start = config_from_json(j.at("initial"), "initial", &inst.start_angles);
  inst.goal = config_from_json(j.at("final"), "final", &inst.goal_angles);
  inst.params.r_pitch = require_number(j, "r_pitch", "instance");
  inst.params.r_yaw = require_number(j, "r_yaw", "instance");
  if (!(inst.params.r_pitch > 0.0) || !(inst.params.r_yaw > 0.0))
    throw ParseError("instance: r_pitch and r_yaw must be positive");
  if (j.contains("theta_disc")) inst.planner.theta_disc = j.at("theta_disc").get<int>();
  if (j.contains("phi_disc")) inst.planner.phi_disc = j.at("phi_disc").get<int>();
  if (j.contains("step")) inst.planner.step = j.at("step").get<double>();
  if (j.contains("refine")) inst.planner.refine = j.at("refine").get<bool>();
  if (inst.planner.theta_disc < 2 || inst.planner.phi_disc < 2)
    throw ParseError("instance: theta_disc and phi_disc must be at least 2");
  if (inst.planner.step < 0.0) throw ParseError("instance: step must be positive");
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

Instance apply_overrides(Instance instance, const InstanceOverrides& overrides) {
  if (overrides.r_pitch) instance.params.r_pitch = *overrides.r_pitch;
  if (overrides.r_yaw) instance.params.r_yaw = *overrides.r_yaw;
  if (overrides.step) instance.planner.step = *overrides.step;
  if (overrides.theta_disc) instance.planner.theta_disc = *overrides.theta_disc;
  if (overrides.phi_disc) instance.planner.phi_disc = *overrides.phi_disc;
  if (overrides.refine) instance.planner.refine = *overrides.refine;
  if (!(instance.params.r_pitch > 0.0) || !(instance.params.r_yaw > 0.0))
    throw ParseError("overrides: radii must be positive");
  if (overrides.roll_start_deg) {
    if (!instance.start_angles)
      throw ParseError("roll override requires the initial orientation to be given as angles");
    instance.start_angles->roll = *overrides.roll_start_deg * kDegToRad;
    instance.start.frame = euler_to_frame(*instance.start_angles);
  }
  if (overrides.roll_goal_deg) {
    if (!instance.goal_angles)
      throw ParseError("roll override requires the final orientation to be given as angles");
    instance.goal_angles->roll = *overrides.roll_goal_deg * kDegToRad;
    instance.goal.frame = euler_to_frame(*instance.goal_angles);
  }
  return instance;
}

RunResult run_instance(const Instance& instance) {
  RunResult result;
  result.instance = instance;
  auto t0 = std::chrono::steady_clock::now();
  result.outcome = plan(instance.start, instance.goal, instance.params, instance.planner);
  auto t1 = std::chrono::steady_clock::now();
  result.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  return result;
}

nlohmann::json result_to_json(const RunResult& result) {
  nlohmann::json j;
  j["config"] = {{"r_pitch", result.instance.params.r_pitch},
                 {"r_yaw", result.instance.params.r_yaw},
                 {"theta_disc", result.instance.planner.theta_disc},
                 {"phi_disc", result.instance.planner.phi_disc},
                 {"step", result.instance.planner.step},
                 {"refine", result.instance.planner.refine}};
  j["instance"] = {{"initial", config_to_json(result.instance.start)},
                   {"final", config_to_json(result.instance.goal)}};
  j["wall_time_s"] = result.wall_time_s;

  nlohmann::json classes = nlohmann::json::array();
  for (const ClassSummary& c : result.outcome.classes) {
    nlohmann::json entry{{"class", c.class_label}, {"feasible", c.feasible}};
    if (c.feasible) {
      entry["length_m"] = c.total_length;
      entry["parameters"] = c.parameters;
    } else {
      entry["reason"] = c.reason;
    }
    classes.push_back(std::move(entry));
  }
  j["classes"] = std::move(classes);

  if (result.outcome.best) {
    const CandidatePath& best = *result.outcome.best;
    j["best"] = {{"class", best.class_label},
                 {"length_m", best.total_length},
                 {"parameters", best.parameters}};
    nlohmann::json rows = nlohmann::json::array();
    for (const TrajectorySample& s : best.trajectory.samples) {
      const Configuration& c = s.config;
      rows.push_back({s.s, c.position.x(), c.position.y(), c.position.z(), c.tangent().x(),
                      c.tangent().y(), c.tangent().z(), c.lateral().x(), c.lateral().y(),
                      c.lateral().z(), c.normal().x(), c.normal().y(), c.normal().z(),
                      s.curvature.kappa_g, s.curvature.kappa_n});
    }
    j["trajectory"] = std::move(rows);
  } else {
    j["best"] = nullptr;
  }
  return j;
}

RunResult result_from_json(const nlohmann::json& j) {
  RunResult result;
  const auto& cfg = j.at("config");
  result.instance.params.r_pitch = cfg.at("r_pitch").get<double>();
  result.instance.params.r_yaw = cfg.at("r_yaw").get<double>();
  result.instance.planner.theta_disc = cfg.at("theta_disc").get<int>();
  result.instance.planner.phi_disc = cfg.at("phi_disc").get<int>();
  result.instance.planner.step = cfg.at("step").get<double>();
  result.instance.planner.refine = cfg.at("refine").get<bool>();
  result.instance.start = config_from_result_json(j.at("instance").at("initial"), "instance.initial");
  result.instance.goal = config_from_result_json(j.at("instance").at("final"), "instance.final");
  result.wall_time_s = j.at("wall_time_s").get<double>();

  for (const auto& entry : j.at("classes")) {
    ClassSummary c;
    c.class_label = entry.at("class").get<std::string>();
    c.feasible = entry.at("feasible").get<bool>();
    if (c.feasible) {
      c.total_length = entry.at("length_m").get<double>();
      for (auto it = entry.at("parameters").begin(); it != entry.at("parameters").end(); ++it)
        c.parameters[it.key()] = it.value().get<double>();
    } else {
      c.reason = entry.value("reason", "");
    }
    result.outcome.classes.push_back(std::move(c));
  }

  if (!j.at("best").is_null()) {
    CandidatePath best;
    best.class_label = j.at("best").at("class").get<std::string>();
    best.total_length = j.at("best").at("length_m").get<double>();
    for (auto it = j.at("best").at("parameters").begin(); it != j.at("best").at("parameters").end();
         ++it)
      best.parameters[it.key()] = it.value().get<double>();
    for (const auto& row : j.at("trajectory")) {
      TrajectorySample s;
      s.s = row.at(0).get<double>();
      s.config.position = Vec3(row.at(1), row.at(2), row.at(3));
      s.config.frame.col(0) = Vec3(row.at(4), row.at(5), row.at(6));
      s.config.frame.col(1) = Vec3(row.at(7), row.at(8), row.at(9));
      s.config.frame.col(2) = Vec3(row.at(10), row.at(11), row.at(12));
      s.curvature = {row.at(13).get<double>(), row.at(14).get<double>()};
      best.trajectory.samples.push_back(std::move(s));
    }
    result.outcome.best = std::move(best);
  }
  return result;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "s,x,y,z,tx,ty,tz,yx,yy,yz,ux,uy,uz,kg,kn\n";
  os << std::setprecision(17);
  for (const TrajectorySample& s : traj.samples) {
    const Configuration& c = s.config;
    os << s.s << ',' << c.position.x() << ',' << c.position.y() << ',' << c.position.z() << ','
       << c.tangent().x() << ',' << c.tangent().y() << ',' << c.tangent().z() << ','
       << c.lateral().x() << ',' << c.lateral().y() << ',' << c.lateral().z() << ','
       << c.normal().x() << ',' << c.normal().y() << ',' << c.normal().z() << ','
       << s.curvature.kappa_g << ',' << s.curvature.kappa_n << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  Trajectory traj;
  std::string line;
  if (!std::getline(is, line)) throw ParseError("trajectory csv: empty stream");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 15) throw ParseError("trajectory csv: expected 15 columns");
    TrajectorySample s;
    s.s = vals[0];
    s.config.position = Vec3(vals[1], vals[2], vals[3]);
    s.config.frame.col(0) = Vec3(vals[4], vals[5], vals[6]);
    s.config.frame.col(1) = Vec3(vals[7], vals[8], vals[9]);
    s.config.frame.col(2) = Vec3(vals[10], vals[11], vals[12]);
    s.curvature = {vals[13], vals[14]};
    traj.samples.push_back(std::move(s));
  }
  return traj;
}

namespace {

Instance warmup_instance() {
  Instance inst;
  inst.start = {Vec3::Zero(), Mat3::Identity()};
  inst.goal = {Vec3(30.0, 12.0, 4.0), euler_to_frame({0.6, 0.1, 0.0})};
  inst.params = {20.0, 20.0};
  inst.planner.theta_disc = 4;
  inst.planner.phi_disc = 4;
  return inst;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const nlohmann::json& manifest, const std::string& base_dir) {
  if (!manifest.is_object() || !manifest.contains("runs") || !manifest.at("runs").is_array())
    throw ParseError("manifest: expected an object with a 'runs' array");

  struct Expanded {
    std::string name;
    std::string path;
    InstanceOverrides overrides;
  };
  std::vector<Expanded> runs;
  for (const auto& entry : manifest.at("runs")) {
    if (!entry.is_object() || !entry.contains("instance"))
      throw ParseError("manifest: each run needs an 'instance' path");
    std::string base_name = entry.value("name", entry.at("instance").get<std::string>());
    std::filesystem::path p(entry.at("instance").get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;

    std::vector<std::optional<std::pair<double, double>>> roll_pairs{std::nullopt};
    if (entry.contains("roll_pairs_deg")) {
      roll_pairs.clear();
      for (const auto& pair : entry.at("roll_pairs_deg")) {
        if (!pair.is_array() || pair.size() != 2)
          throw ParseError("manifest: roll_pairs_deg entries must be [initial, final]");
        roll_pairs.push_back(std::make_pair(pair[0].get<double>(), pair[1].get<double>()));
      }
    }
    std::vector<std::optional<double>> yaw_radii{std::nullopt};
    if (entry.contains("r_yaw")) {
      yaw_radii.clear();
      if (entry.at("r_yaw").is_array())
        for (const auto& v : entry.at("r_yaw")) yaw_radii.push_back(v.get<double>());
      else
        yaw_radii.push_back(entry.at("r_yaw").get<double>());
    }

    for (const auto& rolls : roll_pairs)
      for (const auto& ryaw : yaw_radii) {
        Expanded run;
        run.path = p.string();
        run.name = base_name;
        if (rolls) {
          run.overrides.roll_start_deg = rolls->first;
          run.overrides.roll_goal_deg = rolls->second;
          std::ostringstream os;
          os << " roll(" << rolls->first << "," << rolls->second << ")";
          run.name += os.str();
        }
        if (ryaw) {
          run.overrides.r_yaw = ryaw;
          std::ostringstream os;
          os << " Ryaw=" << *ryaw;
          run.name += os.str();
        }
        if (entry.contains("r_pitch")) run.overrides.r_pitch = entry.at("r_pitch").get<double>();
        if (entry.contains("theta_disc")) run.overrides.theta_disc = entry.at("theta_disc").get<int>();
        if (entry.contains("phi_disc")) run.overrides.phi_disc = entry.at("phi_disc").get<int>();
        if (entry.contains("step")) run.overrides.step = entry.at("step").get<double>();
        runs.push_back(std::move(run));
      }
  }

  std::vector<BenchRow> rows;
  if (runs.empty()) return rows;

  // first plan pays one-off initialization costs; keep it out of the timings
  run_instance(warmup_instance());

  for (const Expanded& run : runs) {
    BenchRow row;
    row.name = run.name;
    try {
      Instance inst = apply_overrides(load_instance(run.path), run.overrides);
      RunResult result = run_instance(inst);
      row.time_s = result.wall_time_s;
      if (result.outcome.best) {
        row.status = "ok";
        row.length = result.outcome.best->total_length;
        row.class_label = result.outcome.best->class_label;
      } else {
        row.status = "infeasible";
      }
    } catch (const std::exception& e) {
      row.status = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json bench_to_json(const std::vector<BenchRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const BenchRow& row : rows) {
    nlohmann::json entry{{"name", row.name}, {"status", row.status}, {"time_s", row.time_s}};
    if (row.status == "ok") {
      entry["length_m"] = row.length;
      entry["class"] = row.class_label;
    }
    out.push_back(std::move(entry));
  }
  return {{"rows", std::move(out)}};
}

void print_bench_table(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << std::left << std::setw(44) << "instance" << std::setw(12) << "length (m)" << std::setw(18)
     << "class" << std::setw(10) << "time (s)" << "status\n";
  for (const BenchRow& row : rows) {
    os << std::left << std::setw(44) << row.name;
    if (row.status == "ok") {
      os << std::setw(12) << std::fixed << std::setprecision(2) << row.length << std::setw(18)
         << row.class_label << std::setw(10) << std::setprecision(3) << row.time_s << "ok\n";
      os.unsetf(std::ios::fixed);
    } else {
      os << std::setw(12) << "-" << std::setw(18) << "-" << std::setw(10) << "-" << row.status
         << "\n";
    }
  }
}

}  // namespace dubins3d
