#pragma once

#include <optional>

#include "dubins3d/candidate.hpp"
#include "dubins3d/sphere_dubins.hpp"

namespace dubins3d {

/// Intermediary sphere family between two same-type tangent spheres. The
/// intermediary center lies on a circular locus around the midpoint of the
/// two sphere centers.
struct IntermediarySphereGeometry {
  Vec3 r_i, r_f;
  Vec3 axis;  // unit vector from r_i toward r_f (fallback axis when they coincide)
  double alpha = 0.0;        // arccos(|r_f - r_i| / 4R)
  Vec3 locus_center;
  double locus_radius = 0.0;  // 2 R sin(alpha)
  Vec3 x_axis, y_axis;
  double radius = 0.0;  // sphere radius R
};

/// Entry/exit tangency points and tangents for the intermediary sphere at
/// locus angle theta.
struct EnvelopeBoundaryConfigs {
  Vec3 center;  // intermediary-sphere center
  Vec3 x_ic, t_ic, x_oc, t_oc;
};

/// Returns nullopt when |r_f - r_i| > 4R (no intermediary sphere exists).
std::optional<IntermediarySphereGeometry> make_intermediary_sphere_geometry(const Vec3& r_i,
                                                                            const Vec3& r_f,
                                                                            double radius,
                                                                            const Mat3& seed_frame);

EnvelopeBoundaryConfigs intermediary_sphere_configs(const IntermediarySphereGeometry& geom,
                                                    double theta, double phi_ic, double phi_oc);

/// Best sphere-sphere-sphere path for one same-type sphere pairing; the
/// intermediary sphere takes the opposite type.
ClassOutcome best_sphere_envelope_path(const Configuration& start, const Configuration& goal,
                                       SphereSide side, const VehicleParams& params,
                                       const SurfaceGridOptions& options);

}  // namespace dubins3d
