#include "dubins3d/planner.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "dubins3d/cylinder_path.hpp"
#include "dubins3d/plane_path.hpp"
#include "dubins3d/sphere_envelope_path.hpp"

namespace dubins3d {

void PlannerConfig::validate() const {
  if (theta_disc < 2 || phi_disc < 2)
    throw std::invalid_argument("PlannerConfig: discretizations must be at least 2");
  if (step != 0.0 && step < 0.0) throw std::invalid_argument("PlannerConfig: step must be positive");
}

PlanOutcome plan(const Configuration& start, const Configuration& goal, const VehicleParams& params,
                 const PlannerConfig& cfg) {
  params.validate();
  cfg.validate();
  if (!is_rotation(start.frame) || !is_rotation(goal.frame))
    throw std::invalid_argument("plan: boundary frames must be rotations");

  SurfaceGridOptions options;
  options.theta_disc = cfg.theta_disc;
  options.phi_disc = cfg.phi_disc;
  options.step = cfg.step > 0.0 ? cfg.step : default_step(params);
  options.refine = cfg.refine;

  constexpr SphereSide kSides[4] = {SphereSide::Inner, SphereSide::Outer, SphereSide::Left,
                                    SphereSide::Right};

  std::vector<std::function<ClassOutcome()>> jobs;
  for (SphereSide side : kSides)
    jobs.emplace_back([=, &start, &goal, &params] {
      return best_cylinder_path(start, goal, side, params, options);
    });
  for (SphereSide side : kSides)
    jobs.emplace_back([=, &start, &goal, &params] {
      return best_plane_path(start, goal, side, params, options);
    });
  for (SphereSide side : kSides)
    jobs.emplace_back([=, &start, &goal, &params] {
      return best_sphere_envelope_path(start, goal, side, params, options);
    });

  std::vector<std::future<ClassOutcome>> futures;
  futures.reserve(jobs.size());
  for (auto& job : jobs) futures.push_back(std::async(std::launch::async, job));

  const char* labels[12] = {"cyc_inner",      "cyc_outer",      "cyc_left",      "cyc_right",
                            "pl_inner_outer", "pl_outer_inner", "pl_left_right", "pl_right_left",
                            "sphere_inner",   "sphere_outer",   "sphere_left",   "sphere_right"};

  PlanOutcome out;
  for (size_t i = 0; i < futures.size(); ++i) {
    ClassOutcome result = futures[i].get();
    ClassSummary summary;
    summary.class_label = labels[i];
    if (result.path) {
      summary.feasible = true;
      summary.total_length = result.path->total_length;
      summary.parameters = result.path->parameters;
      if (!out.best || result.path->total_length < out.best->total_length)
        out.best = std::move(*result.path);
    } else {
      summary.reason = result.reason;
    }
    out.classes.push_back(std::move(summary));
  }
  return out;
}

TrajectoryReport validate_trajectory(const Trajectory& traj, const VehicleParams& params, double tol,
                                     const Configuration* expected_start,
                                     const Configuration* expected_goal) {
  params.validate();
  if (traj.samples.size() < 2)
    throw std::invalid_argument("validate_trajectory: need at least 2 samples");

  TrajectoryReport report;
  report.kappa_g_bound = params.max_kappa_g();
  report.kappa_n_bound = params.max_kappa_n();

  const auto& samples = traj.samples;
  double k_max = std::hypot(params.max_kappa_g(), params.max_kappa_n());

  for (size_t i = 0; i < samples.size(); ++i) {
    report.max_orthonormality_error =
        std::max(report.max_orthonormality_error, orthonormality_error(samples[i].config.frame));

    if (i + 1 < samples.size()) {
      double ds = samples[i + 1].s - samples[i].s;
      double chord = (samples[i + 1].config.position - samples[i].config.position).norm();
      report.max_position_jump = std::max(report.max_position_jump, chord - ds);
      Mat3 rel = samples[i].config.frame.transpose() * samples[i + 1].config.frame;
      double ang = std::acos(std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0));
      report.max_rotation_jump = std::max(report.max_rotation_jump, ang - ds * k_max);
    }

    // central differences, restricted to one constant-control run
    if (i == 0 || i + 1 >= samples.size()) continue;
    if (samples[i - 1].segment != samples[i].segment || samples[i + 1].segment != samples[i].segment)
      continue;
    double ds = samples[i + 1].s - samples[i - 1].s;
    if (ds < 1e-12) continue;
    Vec3 dt = (samples[i + 1].config.tangent() - samples[i - 1].config.tangent()) / ds;
    Vec3 dy = (samples[i + 1].config.lateral() - samples[i - 1].config.lateral()) / ds;
    report.max_abs_kappa_g = std::max(report.max_abs_kappa_g, std::abs(dt.dot(samples[i].config.lateral())));
    report.max_abs_kappa_n = std::max(report.max_abs_kappa_n, std::abs(dt.dot(samples[i].config.normal())));
    report.max_roll_rate = std::max(report.max_roll_rate, std::abs(dy.dot(samples[i].config.normal())));
  }

  if (expected_start) {
    report.endpoint_position_error =
        std::max(report.endpoint_position_error,
                 (samples.front().config.position - expected_start->position).norm());
    report.endpoint_frame_error = std::max(
        report.endpoint_frame_error, (samples.front().config.frame - expected_start->frame).norm());
  }
  if (expected_goal) {
    report.endpoint_position_error =
        std::max(report.endpoint_position_error,
                 (samples.back().config.position - expected_goal->position).norm());
    report.endpoint_frame_error = std::max(report.endpoint_frame_error,
                                           (samples.back().config.frame - expected_goal->frame).norm());
  }

  report.curvature_ok = report.max_abs_kappa_g <= report.kappa_g_bound * (1.0 + tol) &&
                        report.max_abs_kappa_n <= report.kappa_n_bound * (1.0 + tol);
  report.frames_ok = report.max_orthonormality_error <= 1e-9;
  report.continuity_ok = report.max_position_jump <= 1e-6 && report.max_rotation_jump <= 1e-6;
  report.endpoints_ok = report.endpoint_position_error <= 1e-5 && report.endpoint_frame_error <= 1e-5;
  report.ok = report.curvature_ok && report.frames_ok && report.continuity_ok && report.endpoints_ok &&
              report.max_roll_rate <= 1e-6;
  return report;
}

}  // namespace dubins3d
