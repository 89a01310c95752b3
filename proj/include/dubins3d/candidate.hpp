#pragma once

#include <map>
#include <optional>
#include <string>

#include "dubins3d/rmf.hpp"

namespace dubins3d {

/// Assembled sphere-surface-sphere path candidate.
struct CandidatePath {
  std::string class_label;                  // cyc_inner, pl_left_right, sphere_outer, ...
  std::map<std::string, double> parameters;  // winning grid point
  double total_length = 0.0;                // meters
  Trajectory trajectory;
};

/// Result of one path-class solver: a path, or the reason it is infeasible.
struct ClassOutcome {
  std::optional<CandidatePath> path;
  std::string reason;
};

/// Grid resolution and sampling settings shared by the class solvers.
struct SurfaceGridOptions {
  int theta_disc = 15;
  int phi_disc = 15;
  double step = 1.0;    // trajectory sampling step, meters
  bool refine = false;  // one golden-section pass around the winning grid point
};

SphereSide opposite_side(SphereSide side);

}  // namespace dubins3d
