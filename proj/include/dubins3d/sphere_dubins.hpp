#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dubins3d/rmf.hpp"

namespace dubins3d {

/// Configuration on a sphere, relative to its center.
struct SphericalConfig {
  Vec3 position;  // |position| = sphere radius
  Vec3 tangent;   // unit, perpendicular to position
};

struct SphericalPathParams {
  double sphere_radius = 0.0;           // meters
  double max_geodesic_curvature = 0.0;  // on-sphere control bound, 1/m

  /// Minimum turning radius on the sphere: R / sqrt(1 + (u_max R)^2).
  double turn_radius() const;
  /// turn_radius scaled to the unit sphere, in (0, 1).
  double unit_turn_radius() const;
};

/// On-sphere parameters for motion over the tangent sphere `side`: the sphere
/// radius is the matching vehicle radius and the control bound is the bound
/// of the other control.
SphericalPathParams sphere_params_for(SphereSide side, const VehicleParams& params);

/// True when the scaled turn radius falls inside the range covered by the
/// candidate families (unit turn radius <= sqrt(3)/2).
bool spherical_radius_supported(const SphericalPathParams& params);

enum class SphereSeg { Left, Geodesic, Right };

struct SphericalSegment {
  SphereSeg type;
  double arc_angle = 0.0;  // radians
};

struct SphericalPath {
  std::vector<SphericalSegment> segments;
  double length = 0.0;    // meters on the radius-R sphere
  double residual = 0.0;  // boundary mismatch of the scaled problem
  Mat3 start_frame;       // unit-sphere frame [X T N] at the path start
  SphericalPathParams params;
};

/// Candidate word for the boundary-value search. Segments either share an
/// unknown slot or are pinned to a fixed arc angle.
struct SphericalWord {
  std::vector<SphereSeg> letters;
  std::vector<int> slot;       // unknown index per letter, -1 when pinned
  std::vector<double> pinned;  // pinned angle per letter (used when slot == -1)
  int n_slots = 0;
  std::string pattern;  // family shape: CGC, CCC, CCCC, CCCCC, CCpiC
};

/// Candidate families for a scaled turn radius. Throws std::domain_error for
/// r_hat outside (0, sqrt(3)/2].
std::vector<SphericalWord> candidate_families(double r_hat);

/// Shortest on-sphere path over the candidate families, via multi-start
/// damped root-finding on the segment arc angles. Returns nullopt when no
/// family admits a solution (or the turn radius is unsupported).
std::optional<SphericalPath> solve_spherical_dubins(const SphericalConfig& start,
                                                    const SphericalConfig& goal,
                                                    const SphericalPathParams& params);

/// 3D trajectory of a spherical path lying on the tangent sphere `side`
/// centered at sphere_center. Throws when side/params are inconsistent with
/// the sphere the path was solved on.
Trajectory lift_spherical_path(const SphericalPath& path, const Vec3& sphere_center, SphereSide side,
                               double step, const VehicleParams& params);

/// Position/tangent of a configuration relative to a sphere center.
SphericalConfig on_sphere_config(const Configuration& config, const Vec3& sphere_center);

}  // namespace dubins3d
