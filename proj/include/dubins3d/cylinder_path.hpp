#pragma once

#include <array>

#include "dubins3d/candidate.hpp"
#include "dubins3d/dubins2d.hpp"
#include "dubins3d/sphere_dubins.hpp"

namespace dubins3d {

/// Cylinder joining two same-type tangent spheres. The body frame sits at the
/// initial-sphere center with its z axis along the cylinder axis.
struct CylinderGeometry {
  Vec3 base_center;
  Vec3 axis;
  double height = 0.0;
  double radius = 0.0;
  Mat3 body_frame;  // columns x, y, z with z = axis
};

/// Entry/exit angles on the cylinder: theta locates the point on the boundary
/// circle, phi the tangent direction (0 = circumferential, pi/2 = axial).
struct CylinderBoundary {
  double theta_ic = 0.0;
  double phi_ic = 0.0;
  double theta_oc = 0.0;
  double phi_oc = 0.0;
};

struct CylinderBoundaryConfigs {
  Vec3 x_ic, t_ic, x_oc, t_oc;  // global frame
};

/// Throws when the sphere centers coincide (the axis is undefined).
CylinderGeometry make_cylinder_geometry(const Vec3& r_i, const Vec3& r_f, double radius,
                                        const Mat3& seed_frame);

CylinderBoundaryConfigs cylinder_boundary_configs(const CylinderGeometry& geom,
                                                  const CylinderBoundary& b);

/// Unwrapped images of the exit configuration on the tangent plane at the
/// entry point. The entry maps to (0, 0) with heading phi_ic; the two exit
/// images differ by a full wrap of the cylinder.
std::array<PlanarConfig, 2> unwrap_goal(const CylinderBoundary& b, const CylinderGeometry& geom);

/// Wraps a planar path (starting at the origin of the unwrapping plane) back
/// onto the cylinder and lifts it to full 3D configurations.
Trajectory wrap_path(const std::vector<PlanarSample>& planar, const CylinderGeometry& geom,
                     const CylinderBoundary& b, SphereSide side, const VehicleParams& params);

/// Best sphere-cylinder-sphere path over the boundary-angle grid for one
/// same-type sphere pairing.
ClassOutcome best_cylinder_path(const Configuration& start, const Configuration& goal,
                                SphereSide side, const VehicleParams& params,
                                const SurfaceGridOptions& options);

}  // namespace dubins3d
