#pragma once

#include <optional>

#include "dubins3d/candidate.hpp"
#include "dubins3d/dubins2d.hpp"
#include "dubins3d/sphere_dubins.hpp"

namespace dubins3d {

/// Cross-tangent plane family between two opposite-type tangent spheres.
/// The tangency loci on the two spheres are circles centered at
/// locus_center_initial/final, parameterized by theta against x_axis/y_axis.
struct CrossTangentGeometry {
  Vec3 r_i, r_f;
  Vec3 locus_center_initial;
  Vec3 locus_center_final;
  double alpha = 0.0;  // arccos(2R / |r_f - r_i|)
  Vec3 x_axis, y_axis;
  double radius = 0.0;  // sphere radius R
};

/// Entry/exit points and tangents on the plane selected by theta, along with
/// the in-plane axes used to lay out the planar sub-problem.
struct PlaneBoundaryConfigs {
  Vec3 x_ic, t_ic, x_oc, t_oc;
  Vec3 plane_tangent;   // unit vector from x_ic toward x_oc
  Vec3 plane_binormal;  // surface_normal x plane_tangent
  Vec3 surface_normal;  // (x_ic - r_i) / R
};

/// Returns nullopt when the spheres intersect (|r_f - r_i| < 2R). Exact
/// tangency (equality) is treated as feasible with a degenerate locus.
std::optional<CrossTangentGeometry> make_cross_tangent_geometry(const Vec3& r_i, const Vec3& r_f,
                                                                double radius, const Mat3& seed_frame);

PlaneBoundaryConfigs cross_tangent_configs(const CrossTangentGeometry& geom, double theta,
                                           double phi_ic, double phi_oc);

/// Best sphere-plane-sphere path for the pairing that starts on `start_side`
/// and ends on the opposite-type sphere.
ClassOutcome best_plane_path(const Configuration& start, const Configuration& goal,
                             SphereSide start_side, const VehicleParams& params,
                             const SurfaceGridOptions& options);

}  // namespace dubins3d
