#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dubins3d/candidate.hpp"

namespace dubins3d {

struct PlannerConfig {
  int theta_disc = 15;
  int phi_disc = 15;
  double step = 0.0;    // <= 0 selects min(r_pitch, r_yaw) / 50
  bool refine = false;  // golden-section pass around the winning grid point
  void validate() const;
};

struct ClassSummary {
  std::string class_label;
  bool feasible = false;
  double total_length = 0.0;
  std::string reason;
  std::map<std::string, double> parameters;
};

struct PlanOutcome {
  std::optional<CandidatePath> best;
  std::vector<ClassSummary> classes;  // all 12 pairings, in evaluation order
};

/// Minimum-length path over the three classes and four sphere pairings each.
/// The pairings run concurrently; the reduction order is fixed, so results
/// are deterministic.
PlanOutcome plan(const Configuration& start, const Configuration& goal, const VehicleParams& params,
                 const PlannerConfig& cfg);

/// Feasibility audit of a sampled trajectory: finite-difference curvature
/// maxima against the vehicle bounds, frame orthonormality drift, sample
/// continuity, roll-rate estimate, and (when boundary configurations are
/// given) endpoint errors.
struct TrajectoryReport {
  double max_abs_kappa_g = 0.0;
  double max_abs_kappa_n = 0.0;
  double kappa_g_bound = 0.0;
  double kappa_n_bound = 0.0;
  double max_orthonormality_error = 0.0;
  double max_roll_rate = 0.0;
  double max_position_jump = 0.0;  // chord excess over the arc-length step
  double max_rotation_jump = 0.0;  // frame rotation excess over the step bound
  double endpoint_position_error = 0.0;
  double endpoint_frame_error = 0.0;
  bool curvature_ok = false;
  bool frames_ok = false;
  bool continuity_ok = false;
  bool endpoints_ok = false;
  bool ok = false;
};

TrajectoryReport validate_trajectory(const Trajectory& traj, const VehicleParams& params, double tol,
                                     const Configuration* expected_start = nullptr,
                                     const Configuration* expected_goal = nullptr);

}  // namespace dubins3d
