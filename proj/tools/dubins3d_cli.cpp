#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dubins3d/io.hpp"

namespace {

constexpr int kExitParseError = 2;
constexpr int kExitInfeasible = 3;

int cmd_plan(const std::string& instance_path, const dubins3d::InstanceOverrides& overrides,
             const std::string& out_path, const std::string& csv_path) {
  dubins3d::Instance instance =
      dubins3d::apply_overrides(dubins3d::load_instance(instance_path), overrides);
  dubins3d::RunResult result = dubins3d::run_instance(instance);

  nlohmann::json doc = dubins3d::result_to_json(result);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw dubins3d::ParseError("cannot open output file: " + out_path);
    out << doc.dump(2) << '\n';
  }

  if (!result.outcome.best) {
    std::cerr << "no feasible path found in any class\n";
    return kExitInfeasible;
  }

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw dubins3d::ParseError("cannot open csv file: " + csv_path);
    dubins3d::write_trajectory_csv(csv, result.outcome.best->trajectory);
  }

  std::cout << "best class: " << result.outcome.best->class_label << '\n'
            << "length:     " << result.outcome.best->total_length << " m\n"
            << "wall time:  " << result.wall_time_s << " s\n";
  for (const dubins3d::ClassSummary& c : result.outcome.classes) {
    std::cout << "  " << c.class_label << ": ";
    if (c.feasible)
      std::cout << c.total_length << " m\n";
    else
      std::cout << "infeasible (" << c.reason << ")\n";
  }
  return 0;
}

int cmd_bench(const std::string& manifest_path, const std::string& out_path) {
  std::ifstream in(manifest_path);
  if (!in) throw dubins3d::ParseError("cannot open manifest: " + manifest_path);
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw dubins3d::ParseError(manifest_path + ": " + e.what());
  }
  std::string base_dir = std::filesystem::path(manifest_path).parent_path().string();
  std::vector<dubins3d::BenchRow> rows = dubins3d::run_benchmark(manifest, base_dir);
  dubins3d::print_bench_table(std::cout, rows);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw dubins3d::ParseError("cannot open output file: " + out_path);
    out << dubins3d::bench_to_json(rows).dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3D Dubins planner for a vehicle with independent pitch and yaw rate bounds"};
  app.require_subcommand(1);

  std::string instance_path, out_path, csv_path, manifest_path;
  dubins3d::InstanceOverrides overrides;
  double r_pitch = 0, r_yaw = 0, step = 0;
  int theta_disc = 0, phi_disc = 0;
  bool refine = false;

  CLI::App* plan = app.add_subcommand("plan", "plan a single instance file");
  plan->add_option("--instance", instance_path, "instance JSON file")->required();
  auto* opt_rp = plan->add_option("--rpitch", r_pitch, "override pitch turn radius (m)");
  auto* opt_ry = plan->add_option("--ryaw", r_yaw, "override yaw turn radius (m)");
  auto* opt_td = plan->add_option("--theta-disc", theta_disc, "position-angle discretization");
  auto* opt_pd = plan->add_option("--phi-disc", phi_disc, "heading-angle discretization");
  auto* opt_st = plan->add_option("--step", step, "trajectory sampling step (m)");
  plan->add_flag("--refine", refine, "refine around the winning grid point");
  plan->add_option("--out", out_path, "write the full result document (JSON)");
  plan->add_option("--csv", csv_path, "write the sampled trajectory (CSV)");

  CLI::App* bench = app.add_subcommand("bench", "run a benchmark manifest");
  bench->add_option("--manifest", manifest_path, "manifest JSON file")->required();
  bench->add_option("--out", out_path, "write the summary table (JSON)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) {
      if (opt_rp->count()) overrides.r_pitch = r_pitch;
      if (opt_ry->count()) overrides.r_yaw = r_yaw;
      if (opt_td->count()) overrides.theta_disc = theta_disc;
      if (opt_pd->count()) overrides.phi_disc = phi_disc;
      if (opt_st->count()) overrides.step = step;
      if (refine) overrides.refine = true;
      return cmd_plan(instance_path, overrides, out_path, csv_path);
    }
    return cmd_bench(manifest_path, out_path);
  } catch (const dubins3d::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
